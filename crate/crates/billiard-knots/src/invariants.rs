//! Alexander polynomial and knot determinant from a diagram, via the
//! Wirtinger presentation and Fox calculus.
//!
//! Arcs are the strands between consecutive undercrossings. Each crossing
//! contributes one relation; its Fox derivatives fill one row of the
//! Alexander matrix over the integer Laurent ring. Deleting the last row
//! and column and taking the fraction-free determinant gives the Alexander
//! polynomial up to a unit.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::diagram::{KnotDiagram, PdInput};
use crate::error::{Error, Result};
use crate::laurent::{det_bareiss, LaurentPolynomial};

/// Invariants of one knot diagram.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    pub determinant: BigInt,
    pub alexander: LaurentPolynomial,
    pub is_square: bool,
    pub square_root: Option<BigInt>,
}

impl InvariantReport {
    pub fn from_diagram(diagram: &KnotDiagram) -> Result<Self> {
        let alexander = alexander_polynomial(diagram)?;
        Ok(Self::from_alexander(alexander))
    }

    pub fn from_alexander(alexander: LaurentPolynomial) -> Self {
        let determinant = alexander.eval_int(-1).abs();
        let square_root = perfect_square_root(&determinant);
        InvariantReport {
            determinant,
            is_square: square_root.is_some(),
            square_root,
            alexander,
        }
    }

    /// `{"det": N, "alexander": {"coeffs": [...], "min_exp": 0}, "square_root": N|null}`
    pub fn to_json(&self) -> serde_json::Value {
        let (min_exp, coeffs) = self.alexander.to_dense();
        let coeffs: Vec<serde_json::Value> = coeffs.iter().map(bigint_json).collect();
        serde_json::json!({
            "det": bigint_json(&self.determinant),
            "alexander": { "coeffs": coeffs, "min_exp": min_exp },
            "square_root": self.square_root.as_ref().map(bigint_json),
        })
    }
}

fn bigint_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => serde_json::json!(x),
        None => serde_json::json!(v.to_string()),
    }
}

/// The Alexander polynomial, normalized to lowest exponent 0 and positive
/// leading coefficient. The empty diagram gives the constant 1.
pub fn alexander_polynomial(diagram: &KnotDiagram) -> Result<LaurentPolynomial> {
    let c = diagram.crossing_count();
    if c == 0 {
        return Ok(LaurentPolynomial::one());
    }
    let mut events = Vec::with_capacity(2 * c);
    for &g in &diagram.gauss_code {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i > c {
            return Err(Error::UnsupportedLink("gauss label out of range".into()));
        }
        events.push((i - 1, g > 0));
    }
    let signs: Vec<i8> = diagram.crossings.iter().map(|x| x.sign).collect();
    alexander_from_events(c, &events, &signs)
}

/// Alexander polynomial of a diagram given by its PD code.
pub fn alexander_from_pd(input: &PdInput) -> Result<LaurentPolynomial> {
    let c = input.pd.len();
    if c == 0 {
        return Ok(LaurentPolynomial::one());
    }
    // event at position p is the visit whose incoming edge is p
    let next = |e: usize| if e == 2 * c { 1 } else { e + 1 };
    let mut events = vec![None; 2 * c];
    for (i, t) in input.pd.iter().enumerate() {
        let [a, b, ci, d] = *t;
        if ci != next(a) {
            return Err(Error::UnsupportedLink(
                "under strand edges are not consecutive".into(),
            ));
        }
        let over_in = if input.signs[i] > 0 { d } else { b };
        for (edge, over) in [(a, false), (over_in, true)] {
            let slot = &mut events[edge - 1];
            if slot.is_some() {
                return Err(Error::UnsupportedLink(format!(
                    "edge {edge} enters two crossings"
                )));
            }
            *slot = Some((i, over));
        }
    }
    let events: Vec<(usize, bool)> = events
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::UnsupportedLink("some edge never enters a crossing".into()))?;
    alexander_from_events(c, &events, &input.signs)
}

/// Shared core: `events[p]` is the crossing visited at position `p+1`
/// together with an over flag; each crossing must occur once over and
/// once under, and the walk must be a single closed component.
fn alexander_from_events(
    c: usize,
    events: &[(usize, bool)],
    signs: &[i8],
) -> Result<LaurentPolynomial> {
    assert_eq!(events.len(), 2 * c);
    assert_eq!(signs.len(), c);
    let mut under_pos = vec![usize::MAX; c];
    let mut over_pos = vec![usize::MAX; c];
    for (p, &(i, over)) in events.iter().enumerate() {
        let slot = if over { &mut over_pos } else { &mut under_pos };
        if slot[i] != usize::MAX {
            return Err(Error::UnsupportedLink(format!(
                "crossing {} visited twice {}",
                i + 1,
                if over { "over" } else { "under" }
            )));
        }
        slot[i] = p + 1;
    }
    // arcs between consecutive undercrossings; ids wrap modulo c
    let mut arc_of_edge = vec![0usize; 2 * c + 1];
    let mut arc = 0usize;
    for p in 1..=2 * c {
        arc_of_edge[p] = arc % c;
        if !events[p - 1].1 {
            arc += 1;
        }
    }
    if arc != c {
        return Err(Error::UnsupportedLink("over/under counts mismatch".into()));
    }
    let next = |e: usize| if e == 2 * c { 1 } else { e + 1 };
    let one = LaurentPolynomial::one();
    let t = LaurentPolynomial::monomial(1, 1);
    let t_inv = LaurentPolynomial::monomial(-1, 1);
    let mut matrix = vec![vec![LaurentPolynomial::zero(); c]; c];
    for i in 0..c {
        let a_in = arc_of_edge[under_pos[i]];
        let a_out = arc_of_edge[next(under_pos[i])];
        let a_over = arc_of_edge[over_pos[i]];
        let row = &mut matrix[i];
        // relation out = over^e * in * over^-e; Fox derivatives abelianized
        let (d_over, d_in) = if signs[i] > 0 {
            (&one - &t, t.clone())
        } else {
            (&one - &t_inv, t_inv.clone())
        };
        row[a_over] = &row[a_over] + &d_over;
        row[a_in] = &row[a_in] + &d_in;
        row[a_out] = &row[a_out] - &one;
    }
    // delete last row and column
    matrix.pop();
    for row in &mut matrix {
        row.pop();
    }
    let det = det_bareiss(matrix);
    let norm = det.normalized();
    if norm.is_zero() {
        return Err(Error::UnsupportedLink(
            "vanishing Alexander determinant (not a knot diagram)".into(),
        ));
    }
    debug_assert!(norm.eval_int(1).abs().is_one(), "Alexander value at 1 must be a unit");
    Ok(norm)
}

/// `|Delta(-1)|`, the knot determinant.
pub fn determinant(diagram: &KnotDiagram) -> Result<BigInt> {
    Ok(alexander_polynomial(diagram)?.eval_int(-1).abs())
}

/// Integer square root if `k` is a perfect square.
pub fn perfect_square_root(k: &BigInt) -> Option<BigInt> {
    if k.is_negative() {
        return None;
    }
    let r = k.sqrt();
    (&r * &r == *k).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_diagram;
    use crate::trajectory::BilliardParams;

    #[test]
    fn trefoil_pd() {
        // standard 3_1 code
        let pd = PdInput::new(vec![[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap();
        let a = alexander_from_pd(&pd).unwrap();
        assert_eq!(a, LaurentPolynomial::from_terms([(0, 1), (1, -1), (2, 1)]));
        assert_eq!(a.eval_int(-1).abs(), BigInt::from(3));
    }

    #[test]
    fn unknot() {
        let d = build_diagram(&BilliardParams::flat_torus(1, 5, 7).unwrap()).unwrap();
        let r = InvariantReport::from_diagram(&d).unwrap();
        assert_eq!(r.alexander, LaurentPolynomial::one());
        assert_eq!(r.determinant, BigInt::from(1));
        assert_eq!(r.square_root, Some(BigInt::from(1)));
    }

    #[test]
    fn alexander_is_palindromic_and_determinant_odd() {
        for p in [
            BilliardParams::flat_torus(2, 5, 3).unwrap(),
            BilliardParams::flat_torus(3, 7, 5).unwrap(),
            BilliardParams::cylinder(2, 5, 5).unwrap(),
        ] {
            let d = build_diagram(&p).unwrap();
            let a = alexander_polynomial(&d).unwrap();
            assert!(a.is_palindromic());
            assert!((a.eval_int(-1).abs() % 2u8).is_one());
        }
    }

    #[test]
    fn square_roots() {
        assert_eq!(
            perfect_square_root(&BigInt::from(12769)),
            Some(BigInt::from(113))
        );
        assert_eq!(perfect_square_root(&BigInt::from(1)), Some(BigInt::from(1)));
        assert_eq!(perfect_square_root(&BigInt::from(2)), None);
    }
}
