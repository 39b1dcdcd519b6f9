use serde::Serialize;

use crate::forms::{unify, TriangleGroup, TRIANGLE_GROUPS};
use crate::forms::Registry;
use crate::qseries::{int, PuiseuxSeries, Rational};

use super::pf::{u_hat_ladder, PFOperator};

/// `PFOperator::triangle` at the group's angles and `t*`.
pub fn group_operator(g: &TriangleGroup) -> PFOperator {
    PFOperator::triangle(&g.alpha(), &g.beta(), &g.gamma(), &int(g.t_star)).expect("t* is nonzero")
}

/// Agreement of one ladder rung with its q-series.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LadderCheck {
    pub group: String,
    pub k: u32,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<String>,
}

/// `t = -t* C^rho / B^rho` and `t' = q dt/dq` for the group.
pub fn hauptmodul(g: &TriangleGroup, precision: &Rational) -> Result<(PuiseuxSeries, PuiseuxSeries), String> {
    let src = format!("(* {} (/ {id}.Crho {id}.Brho))", -g.t_star, id = g.id);
    let t = Registry::global().eval_str(&src, precision, g.d).map_err(|e| e.to_string())?;
    let dt = t.derive();
    Ok((t, dt))
}

/// Checks `u^_k(t(q)) t'^(k/2) = (un upsilon*rho k E)` for `k = 4, 6, ..., k_max`.
pub fn ladder_consistency(g: &TriangleGroup, k_max: u32, precision: &Rational) -> Result<Vec<LadderCheck>, String> {
    let ladder = u_hat_ladder(&group_operator(g), k_max).map_err(|e| e.to_string())?;
    let (t, dt) = hauptmodul(g, precision)?;
    let reg = Registry::global();
    let r = g.rho * g.upsilon;
    ladder
        .iter()
        .zip((4..).step_by(2))
        .map(|(u, k)| {
            let lhs = u.eval_series(&t).and_then(|s| s.mul(&dt.pow(k as i64 / 2)?)).map_err(|e| e.to_string())?;
            let rhs = reg.eval_str(&format!("(un {r} {k} {}.E)", g.id), precision, g.d).map_err(|e| e.to_string())?;
            let (a, b) = unify(lhs, rhs).map_err(|e| e.to_string())?;
            let diff = a.first_difference(&b).map(|(e, x, y)| format!("q^{e}: {x} vs {y}"));
            Ok(LadderCheck { group: g.id.to_string(), k, pass: diff.is_none(), first_difference: diff })
        })
        .collect()
}

/// [`ladder_consistency`] for every triangle group.
pub fn all_ladder_consistency(k_max: u32, precision: &Rational) -> Result<Vec<LadderCheck>, String> {
    let mut out = vec![];
    for g in &TRIANGLE_GROUPS {
        out.extend(ladder_consistency(g, k_max, precision)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::triangle_group;
    use crate::hypergeometric::{chazy_residual, WeightedPoly};
    use crate::qseries::rat;

    #[test]
    fn ladder_matches_q_series_for_gamma1() {
        let checks = ladder_consistency(triangle_group("g1").unwrap(), 8, &int(20)).unwrap();
        assert_eq!(checks.len(), 3);
        assert!(checks.iter().all(|c| c.pass), "{checks:?}");
    }

    #[test]
    fn every_group_and_a_wrong_operator() {
        assert!(all_ladder_consistency(8, &int(12)).unwrap().iter().all(|c| c.pass));
        let g = triangle_group("g0p_2").unwrap();
        let (t, dt) = hauptmodul(g, &int(12)).unwrap();
        let wrong = PFOperator::triangle(&rat(1, 4), &rat(1, 3), &int(0), &int(-1)).unwrap();
        let u = u_hat_ladder(&wrong, 4).unwrap();
        let lhs = u[0].eval_series(&t).unwrap().mul(&dt.pow(2).unwrap()).unwrap();
        let rhs = Registry::global().eval_str("(un 8 4 g0p_2.E)", &int(12), 0).unwrap();
        assert!(lhs.first_difference(&rhs).is_some());
    }

    #[test]
    fn rescaling_singular_point() {
        // R_{c t*}(c t) c^(w/2) = R_{t*}(t)
        let (a, b, g) = (rat(1, 3), rat(1, 2), rat(1, 7));
        let base = PFOperator::triangle(&a, &b, &g, &int(-1)).unwrap();
        let c = rat(-64, 3);
        let moved = PFOperator::triangle(&a, &b, &g, &(-&c)).unwrap();
        for (poly, w) in [(WeightedPoly::from_ints(&[(1, [3, 0, 0])]), 12), (WeightedPoly::from_ints(&[(1, [0, 2, 0])]), 12)] {
            let r0 = chazy_residual(&base, &poly).unwrap();
            let r1 = chazy_residual(&moved, &poly).unwrap().scale_var(&c).scale(&(0..w / 2).fold(int(1), |x, _| x * &c));
            assert!(!r0.is_zero());
            assert_eq!(r0, r1);
        }
    }
}
