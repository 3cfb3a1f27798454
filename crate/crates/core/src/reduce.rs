//! Greedy search for an equivalent normalized form of small Mahler measure.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::enclosure::Interval;
use crate::error::Result;
use crate::forms::{BinaryForm, IntMatrix2};
use crate::invariants::mahler_measure;

/// Relative width of the Mahler enclosures compared during the search.
const MAHLER_REL_WIDTH: f64 = 1e-9;
/// Translations use `k = ±2^j` for `j` below this.
const MAX_SHIFT_LOG2: u32 = 12;

#[derive(Clone, Debug)]
pub struct Reduced {
    pub form: BinaryForm,
    /// `form = input_A` with `A` unimodular.
    pub matrix: IntMatrix2,
    pub ln_mahler: Interval,
    pub steps: usize,
    /// Always set: the result is a local minimum at best.
    pub heuristic: bool,
}

fn moves() -> Vec<IntMatrix2> {
    let mut out = vec![IntMatrix2::from_i64(0, -1, 1, 0)];
    for j in 0..MAX_SHIFT_LOG2 {
        let k = 1i64 << j;
        for k in [k, -k] {
            out.push(IntMatrix2::from_i64(1, k, 0, 1));
            out.push(IntMatrix2::from_i64(1, 0, k, 1));
        }
    }
    out
}

/// Greedy descent over translations and the inversion. A move is taken only
/// when the new Mahler upper bound is below the incumbent's lower bound and
/// the leading coefficient stays within `|a_0|` of the input, so a form
/// normalized for some `h` stays normalized. `budget` caps accepted moves.
pub fn reduce_heuristic(f: &BinaryForm, budget: usize) -> Result<Reduced> {
    let level: BigInt = f.coeff(0).abs();
    let mut best = Reduced {
        form: f.clone(),
        matrix: IntMatrix2::identity(),
        ln_mahler: mahler_measure(f, MAHLER_REL_WIDTH)?.ln,
        steps: 0,
        heuristic: true,
    };
    let moves = moves();
    while best.steps < budget {
        let mut pick: Option<(BinaryForm, IntMatrix2, Interval)> = None;
        for m in &moves {
            let g = best.form.transform(m)?;
            let a0 = g.coeff(0);
            if a0.is_zero() || a0.abs() > level {
                continue;
            }
            let Ok(mm) = mahler_measure(&g, MAHLER_REL_WIDTH) else {
                continue;
            };
            let bar = pick
                .as_ref()
                .map_or(best.ln_mahler.lo, |p| p.2.lo.min(best.ln_mahler.lo));
            if mm.ln.hi < bar {
                pick = Some((g, best.matrix.mul(m), mm.ln));
            }
        }
        match pick {
            Some((g, a, ln)) => {
                best.form = g;
                best.matrix = a;
                best.ln_mahler = ln;
                best.steps += 1;
            }
            None => break,
        }
    }
    Ok(best)
}
