//! Closed-form counts for `End`, `Aff`, `A^+(B_n)` and the Green's structure
//! of both reducts.
//!
//! The `A^+` formulas hold for `n ≥ 2`. At `n = 1`, `A^+(B_1)` is
//! `{ξ_ϑ, ξ_(1,1), (1,1;[1])}` with every element idempotent in both reducts;
//! the class counts for that case are the values measured on those three maps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` for which every count fits comfortably in a `u128`.
pub const MAX_FORMULA_N: usize = 20;

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Breakup {
    pub zero: u128,
    pub singleton: u128,
    pub n_support: u128,
    pub full: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveCounts {
    pub r: u128,
    pub l: u128,
    pub d: u128,
    pub h: u128,
    pub idempotents: u128,
    pub regular: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicativeCounts {
    pub r: u128,
    pub l: u128,
    pub d: u128,
    pub h: u128,
    pub idempotents: u128,
    pub regular: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsTable {
    pub n: usize,
    pub end_count: u128,
    pub aut_count: u128,
    pub aff_count: u128,
    pub a_plus_total: u128,
    pub breakup: Breakup,
    pub additive: AdditiveCounts,
    pub multiplicative: MultiplicativeCounts,
}

pub fn counts(n: usize) -> Result<CountsTable> {
    if n == 0 {
        return Err(Error::ZeroN);
    }
    if n > MAX_FORMULA_N {
        return Err(Error::ExceedsCap {
            n,
            cap: MAX_FORMULA_N,
        });
    }
    let f = factorial(n);
    let m = n as u128;
    let (m2, m3, m4) = (m * m, m * m * m, m * m * m * m);

    let end_count = f + m + 1;
    let aut_count = f;
    let aff_count = (f + 1) * m2 + 1;

    if n == 1 {
        return Ok(CountsTable {
            n,
            end_count,
            aut_count,
            aff_count,
            a_plus_total: 3,
            breakup: Breakup {
                zero: 1,
                singleton: 0,
                n_support: 1,
                full: 1,
            },
            additive: AdditiveCounts {
                r: 3,
                l: 3,
                d: 3,
                h: 3,
                idempotents: 3,
                regular: 3,
            },
            // ξ_ϑ R ξ_(1,1) (right-zero constants); the identity is alone.
            multiplicative: MultiplicativeCounts {
                r: 2,
                l: 3,
                d: 2,
                h: 3,
                idempotents: 3,
                regular: 3,
            },
        });
    }

    let a_plus_total = (f + 1) * m2 + m4 + 1;
    Ok(CountsTable {
        n,
        end_count,
        aut_count,
        aff_count,
        a_plus_total,
        breakup: Breakup {
            zero: 1,
            singleton: m4,
            n_support: f * m2,
            full: m2,
        },
        additive: AdditiveCounts {
            r: f * m + m3 + m + 1,
            l: f * m2 + m3 + m + 1,
            d: f * m + m2 + 2,
            h: a_plus_total,
            idempotents: m3 + m + 1,
            regular: m4 + m2 + 1,
        },
        multiplicative: MultiplicativeCounts {
            r: m2 + m + 1,
            l: 2 * m2 + m + 1,
            d: 3,
            h: m4 + 2 * m2 + 1,
            idempotents: 2 * m2 + m + 1,
            regular: a_plus_total,
        },
    })
}

impl CountsTable {
    /// Aligned `name  value` lines.
    pub fn to_text(&self) -> String {
        let rows: Vec<(String, u128)> = vec![
            ("n".into(), self.n as u128),
            ("|End(B_n)|".into(), self.end_count),
            ("|Aut(B_n)|".into(), self.aut_count),
            ("|Aff(B_n)|".into(), self.aff_count),
            ("|A+(B_n)|".into(), self.a_plus_total),
            ("  zero support".into(), self.breakup.zero),
            ("  singleton support".into(), self.breakup.singleton),
            ("  n-support".into(), self.breakup.n_support),
            ("  full support".into(), self.breakup.full),
            ("R-classes(+)".into(), self.additive.r),
            ("L-classes(+)".into(), self.additive.l),
            ("D-classes(+)".into(), self.additive.d),
            ("H-classes(+)".into(), self.additive.h),
            ("idempotents(+)".into(), self.additive.idempotents),
            ("regular(+)".into(), self.additive.regular),
            ("R-classes(∘)".into(), self.multiplicative.r),
            ("L-classes(∘)".into(), self.multiplicative.l),
            ("D-classes(∘)".into(), self.multiplicative.d),
            ("H-classes(∘)".into(), self.multiplicative.h),
            ("idempotents(∘)".into(), self.multiplicative.idempotents),
            ("regular(∘)".into(), self.multiplicative.regular),
        ];
        let width = rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k}{}  {v}\n", " ".repeat(width - k.chars().count())))
            .collect()
    }
}
