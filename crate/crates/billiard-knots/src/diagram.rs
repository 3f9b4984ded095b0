//! Knot diagrams of billiard curves: crossing enumeration, phase
//! selection, over/under resolution, Gauss and PD codes.
//!
//! Crossing positions are exact rationals for the cube and the flat solid
//! torus. For a cylinder slice at angle `beta` the two parameters of
//! crossing `i` have the form
//!
//! ```text
//! t_i  = (k_i  + x_l(beta)) / 2n,      t'_i = (k'_i - x_l(beta)) / 2n,
//! ```
//!
//! with odd integers `k_i, k'_i` and the tangent quotient
//! `x_l(beta) = tan(l*beta/2n) / tan(s*beta/2n)`. The sum `t_i + t'_i` is
//! a multiple of `1/2n` independent of `beta`, which keeps all phase
//! bookkeeping exact even in the floating-point geometry.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::trajectory::{
    frac, rat, sawtooth, sawtooth_slope_sign, to_f64, BilliardParams, Geometry, Rational,
};

/// Minimal admissible separation of floating-point crossing parameters.
const PARAM_SEPARATION: f64 = 1e-9;

/// Combinatorial data of a cylinder-slice crossing: strand parameters are
/// `(k + x_l)/2n` and `(k' - x_l)/2n` with `k`, `k'` reduced mod `2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SliceData {
    /// Odd integer of the first strand (ascending parameter order).
    pub k: i64,
    /// Odd integer of the second strand.
    pub k_prime: i64,
    /// Chord offset class, `1 <= l <= s-1`.
    pub l: u32,
    /// True when the first strand carries `+x_l`, false when `-x_l`.
    pub first_is_plus: bool,
}

/// A projected double point, before over/under resolution.
#[derive(Debug, Clone)]
pub struct CrossingSite {
    /// First-strand parameter (the smaller of the two).
    pub t: f64,
    /// Second-strand parameter.
    pub t_prime: f64,
    /// Exact parameters, absent only for cylinder slices at angle `beta`.
    pub exact: Option<(Rational, Rational)>,
    /// Exact value of `t + t_prime`; rational in every geometry.
    pub sum: Rational,
    pub slice: Option<SliceData>,
    /// Sign of det(first-strand direction, second-strand direction).
    pub(crate) orient_first: i8,
}

/// A resolved crossing of a knot diagram.
#[derive(Debug, Clone)]
pub struct Crossing {
    /// 1-based, in ascending order of `t`.
    pub index: usize,
    pub t: f64,
    pub t_prime: f64,
    pub t_exact: Option<(Rational, Rational)>,
    pub slice: Option<SliceData>,
    /// Crossing sign, `+1` or `-1`.
    pub sign: i8,
    /// True when the strand visited first passes over.
    pub over_first: bool,
}

/// A knot diagram with its Gauss and PD codes.
///
/// Edges of the PD code are numbered `1..=2c` along the curve; each
/// crossing tuple lists, counterclockwise from the incoming under-edge,
/// the four incident edges.
#[derive(Debug, Clone)]
pub struct KnotDiagram {
    pub params: BilliardParams,
    pub crossings: Vec<Crossing>,
    pub gauss_code: Vec<i64>,
    pub pd_code: Vec<[usize; 4]>,
}

/// All transverse double points of the projection, positions only.
///
/// Results are ordered by ascending `(t, t_prime)`. Parameters producing a
/// non-generic projection are rejected.
pub fn enumerate_crossings(params: &BilliardParams) -> Result<Vec<CrossingSite>> {
    params.validate()?;
    let mut sites = match params.geometry {
        Geometry::FlatTorus => flat_torus_sites(params.s, params.n),
        Geometry::Cube => cube_sites(params.s, params.n, params.m),
        Geometry::Cylinder => cylinder_sites(params.s, params.n, params.beta)?,
    };
    sites.sort_by(|a, b| a.t.partial_cmp(&b.t).unwrap());
    check_generic(&sites)?;
    Ok(sites)
}

/// Crossings of the flat-torus projection `(s*t mod 1, g(n*t))`.
///
/// A crossing pairs `t' = t + c/s` with `n*(t + t') = 0 mod 1`; every
/// solution is rational with denominator dividing `2ns`.
fn flat_torus_sites(s: u32, n: u32) -> Vec<CrossingSite> {
    let mut sites = Vec::new();
    if s < 2 {
        return sites;
    }
    let (si, ni) = (s as i64, n as i64);
    for c in 1..=si / 2 {
        let w_max = if 2 * c == si { ni } else { 2 * ni };
        for w in 0..w_max {
            let ta = frac(rat(w, 2 * ni) - rat(c, 2 * si));
            let tb = frac(ta + rat(c, si));
            let (t1, t2) = if ta < tb { (ta, tb) } else { (tb, ta) };
            sites.push(exact_site(t1, t2, sawtooth_slope_sign(t2 * ni), None));
        }
    }
    debug_assert_eq!(sites.len(), (s as usize - 1) * n as usize);
    sites
}

/// Crossings of the cube projection `(g(n1*t + 1/4), g(n2*t))`.
///
/// With `n2` odd and pairwise coprime frequencies only two families occur:
/// equal x-phase with mirrored y (`t' = t + a/n1`), and mirrored x with
/// equal y-phase (`t' = t + b/n2`). Both are exact rational grids.
fn cube_sites(n1: u32, n2: u32, _n3: u32) -> Vec<CrossingSite> {
    let (p, q) = (n1 as i64, n2 as i64);
    let mut sites = Vec::new();
    // t' = t + a/n1, n2*(t + t') = 0 mod 1
    for a in 1..=p / 2 {
        let w_max = if 2 * a == p { q } else { 2 * q };
        for w in 0..w_max {
            let ta = frac(rat(w, 2 * q) - rat(a, 2 * p));
            let tb = frac(ta + rat(a, p));
            let (t1, t2) = if ta < tb { (ta, tb) } else { (tb, ta) };
            let orient = -cube_xslope(t1, p) * cube_yslope(t1, q);
            sites.push(exact_site(t1, t2, orient, None));
        }
    }
    // t' = t + b/n2, n1*(t + t') + 1/2 = 0 mod 1; n2 odd so b runs a half range
    for b in 1..=(q - 1) / 2 {
        for o in 0..2 * p {
            let ta = frac(rat(2 * o + 1, 4 * p) - rat(b, 2 * q));
            let tb = frac(ta + rat(b, q));
            let (t1, t2) = if ta < tb { (ta, tb) } else { (tb, ta) };
            let orient = cube_xslope(t1, p) * cube_yslope(t1, q);
            sites.push(exact_site(t1, t2, orient, None));
        }
    }
    debug_assert_eq!(sites.len() as i64, 2 * p * q - p - q);
    sites
}

fn cube_xslope(t: Rational, n1: i64) -> i8 {
    sawtooth_slope_sign(t * n1 + rat(1, 4))
}

fn cube_yslope(t: Rational, n2: i64) -> i8 {
    sawtooth_slope_sign(t * n2)
}

/// Crossings of the star polygon in a `beta`-slice with identified radial
/// faces. Requires the classical condition `n >= 2s+1`, under which chord
/// `j` meets exactly the chords `j + d` with `d*s = l mod n`, `l < s`.
fn cylinder_sites(s: u32, n: u32, beta: f64) -> Result<Vec<CrossingSite>> {
    let mut sites = Vec::new();
    if s < 2 {
        return Ok(sites);
    }
    if n < 2 * s + 1 {
        return Err(Error::InvalidParameters(format!(
            "cylinder slice diagrams need n >= 2s+1 (got s={s}, n={n}); \
             the stable limit diagram covers this range"
        )));
    }
    let (si, ni) = (s as i64, n as i64);
    let s_inv = mod_inverse(si, ni);
    for l in 1..si {
        let d = (l * s_inv).rem_euclid(ni);
        let x = x_ratio(beta, l as u32, s, n);
        debug_assert!(x > 0.0 && x < 1.0);
        for j in 0..ni {
            let k = 2 * j + 1;
            let kp = (2 * (j + d) + 1).rem_euclid(2 * ni);
            let t_plus = (k as f64 + x) / (2 * ni) as f64;
            let t_minus = (kp as f64 - x) / (2 * ni) as f64;
            let first_is_plus = t_plus < t_minus;
            let (t, t_prime, k1, k2) = if first_is_plus {
                (t_plus, t_minus, k, kp)
            } else {
                (t_minus, t_plus, kp, k)
            };
            sites.push(CrossingSite {
                t,
                t_prime,
                exact: None,
                sum: rat(k + kp, 2 * ni),
                slice: Some(SliceData {
                    k: k1,
                    k_prime: k2,
                    l: l as u32,
                    first_is_plus,
                }),
                orient_first: if first_is_plus { 1 } else { -1 },
            });
        }
    }
    Ok(sites)
}

/// `x_l(beta) = tan(l*beta/2n) / tan(s*beta/2n)`, the position of the
/// chord cut of class `l` as a fraction of the half-chord.
pub(crate) fn x_ratio(beta: f64, l: u32, s: u32, n: u32) -> f64 {
    let h = beta / (2.0 * n as f64);
    (l as f64 * h).tan() / (s as f64 * h).tan()
}

pub(crate) fn exact_site(
    t: Rational,
    t_prime: Rational,
    orient_first: i8,
    slice: Option<SliceData>,
) -> CrossingSite {
    CrossingSite {
        t: to_f64(t),
        t_prime: to_f64(t_prime),
        exact: Some((t, t_prime)),
        sum: t + t_prime,
        slice,
        orient_first,
    }
}

fn mod_inverse(a: i64, n: i64) -> i64 {
    let e = a.extended_gcd(&n);
    debug_assert!(e.gcd.is_one());
    e.x.rem_euclid(n)
}

/// Reject coincident parameters across distinct crossings (triple points
/// or vertex hits would make the diagram ill-defined).
fn check_generic(sites: &[CrossingSite]) -> Result<()> {
    let mut values: Vec<f64> = sites.iter().flat_map(|s| [s.t, s.t_prime]).collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for w in values.windows(2) {
        if w[1] - w[0] < PARAM_SEPARATION {
            return Err(Error::DegenerateProjection(format!(
                "crossing parameters {} and {} coincide",
                w[0], w[1]
            )));
        }
    }
    if !sites.is_empty() && sites.iter().all(|s| s.exact.is_some()) {
        let mut exact: Vec<Rational> = sites
            .iter()
            .flat_map(|s| {
                let (a, b) = s.exact.unwrap();
                [a, b]
            })
            .collect();
        exact.sort();
        let before = exact.len();
        exact.dedup();
        if exact.len() != before {
            return Err(Error::DegenerateProjection(
                "two crossings share an exact parameter".into(),
            ));
        }
    }
    Ok(())
}

/// Sign of `sin(pi * q)` for exact rational `q`.
pub(crate) fn sin_pi_sign(q: Rational) -> i8 {
    let r = frac(q / 2) * 2; // q mod 2 in [0, 2)
    if r.is_zero() || r.is_one() {
        0
    } else if r < Rational::one() {
        1
    } else {
        -1
    }
}

/// Height difference sign of a site at the given phase: positive when the
/// first strand is higher.
fn site_delta_sign(params: &BilliardParams, site: &CrossingSite, phase: Rational) -> Result<i8> {
    let m = params.m as i64;
    if let Some((t, tp)) = site.exact {
        let d = sawtooth(t * m + phase) - sawtooth(tp * m + phase);
        return match d.cmp(&Rational::zero()) {
            std::cmp::Ordering::Greater => Ok(1),
            std::cmp::Ordering::Less => Ok(-1),
            std::cmp::Ordering::Equal => Err(Error::SingularPhase(phase.to_string())),
        };
    }
    // sign(g(a) - g(b)) = -sign(sin(pi(a+b)) * sin(pi(a-b)))
    let f1 = sin_pi_sign(site.sum * m + phase * 2);
    if f1 == 0 {
        return Err(Error::SingularPhase(phase.to_string()));
    }
    let f2 = (std::f64::consts::PI * m as f64 * (site.t - site.t_prime)).sin();
    if f2.abs() < PARAM_SEPARATION {
        return Err(Error::DegenerateProjection(format!(
            "crossing at t={} is singular for every phase",
            site.t
        )));
    }
    Ok(-f1 * f2.signum() as i8)
}

/// The singular phases of the height direction, sorted, in `[0, 1)`.
///
/// A phase is singular when some crossing has equal strand heights; the
/// condition reads `m*(t + t') + 2*phase = 0 mod 1`, so the set is a finite
/// rational grid.
pub fn singular_phases(params: &BilliardParams, sites: &[CrossingSite]) -> Vec<Rational> {
    let m = params.m as i64;
    let mut out: Vec<Rational> = Vec::new();
    for site in sites {
        let base = frac(-site.sum * m / 2);
        out.push(base);
        out.push(frac(base + rat(1, 2)));
    }
    out.sort();
    out.dedup();
    out
}

/// A phase for which every crossing has nonzero height difference.
///
/// The cube uses half the smallest positive singular phase, keeping the
/// perturbation of the symmetric position as small as possible; the other
/// geometries take the midpoint of the largest gap between singular
/// phases. Fails only when every phase is singular, which needs
/// `gcd(s, m) > 1`.
pub fn choose_phase(params: &BilliardParams) -> Result<Rational> {
    let sites = enumerate_crossings(params)?;
    choose_phase_for(params, &sites)
}

pub fn choose_phase_for(params: &BilliardParams, sites: &[CrossingSite]) -> Result<Rational> {
    if params.geometry == Geometry::FlatTorus && params.s.gcd(&params.m) > 1 {
        return Err(Error::NoValidPhase {
            s: params.s,
            m: params.m,
        });
    }
    let singular = singular_phases(params, sites);
    if singular.is_empty() {
        return Ok(Rational::zero());
    }
    match params.geometry {
        Geometry::Cube => {
            let eps = singular
                .iter()
                .copied()
                .find(|p| p.is_positive())
                .expect("positive singular phase exists");
            Ok(eps / 2)
        }
        _ => {
            // widest circular gap
            let last = singular[singular.len() - 1];
            let mut best_start = last;
            let mut best_gap = singular[0] + 1 - last;
            for w in singular.windows(2) {
                let gap = w[1] - w[0];
                if gap > best_gap {
                    best_start = w[0];
                    best_gap = gap;
                }
            }
            Ok(frac(best_start + best_gap / 2))
        }
    }
}

/// Resolve over/under and signs at the given phase and assemble the codes.
pub fn resolve_diagram(
    params: &BilliardParams,
    sites: &[CrossingSite],
    phase: Rational,
) -> Result<KnotDiagram> {
    let params = params.clone().with_phase(phase);
    let mut crossings = Vec::with_capacity(sites.len());
    for (i, site) in sites.iter().enumerate() {
        let delta = site_delta_sign(&params, site, phase)?;
        let over_first = delta > 0;
        let sign = if over_first {
            site.orient_first
        } else {
            -site.orient_first
        };
        crossings.push(Crossing {
            index: i + 1,
            t: site.t,
            t_prime: site.t_prime,
            t_exact: site.exact,
            slice: site.slice,
            sign,
            over_first,
        });
    }
    let (gauss_code, pd_code) = assemble_codes(sites, &crossings);
    let diagram = KnotDiagram {
        params,
        crossings,
        gauss_code,
        pd_code,
    };
    debug_assert!(diagram.validate().is_ok());
    Ok(diagram)
}

/// Enumerate, pick a phase, resolve: the full pipeline for one curve.
pub fn build_diagram(params: &BilliardParams) -> Result<KnotDiagram> {
    let sites = enumerate_crossings(params)?;
    let phase = choose_phase_for(params, &sites)?;
    resolve_diagram(params, &sites, phase)
}

fn assemble_codes(sites: &[CrossingSite], crossings: &[Crossing]) -> (Vec<i64>, Vec<[usize; 4]>) {
    let c = sites.len();
    // events: (parameter, crossing index, is-first-strand), walked in order
    let mut events: Vec<(usize, bool)> = Vec::with_capacity(2 * c);
    {
        let mut keyed: Vec<(EventKey, usize, bool)> = Vec::with_capacity(2 * c);
        for (i, s) in sites.iter().enumerate() {
            match s.exact {
                Some((a, b)) => {
                    keyed.push((EventKey::Exact(a), i, true));
                    keyed.push((EventKey::Exact(b), i, false));
                }
                None => {
                    keyed.push((EventKey::Approx(s.t), i, true));
                    keyed.push((EventKey::Approx(s.t_prime), i, false));
                }
            }
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        events.extend(keyed.into_iter().map(|(_, i, f)| (i, f)));
    }
    let mut gauss = Vec::with_capacity(2 * c);
    let mut under_pos = vec![0usize; c];
    let mut over_pos = vec![0usize; c];
    for (p, &(i, is_first)) in events.iter().enumerate() {
        let over = is_first == crossings[i].over_first;
        let label = (i + 1) as i64;
        gauss.push(if over { label } else { -label });
        if over {
            over_pos[i] = p + 1;
        } else {
            under_pos[i] = p + 1;
        }
    }
    let next = |p: usize| if p == 2 * c { 1 } else { p + 1 };
    let mut pd = Vec::with_capacity(c);
    for i in 0..c {
        let (pu, po) = (under_pos[i], over_pos[i]);
        let (a, ci) = (pu, next(pu));
        let (oin, oout) = (po, next(po));
        let tuple = if crossings[i].sign > 0 {
            [a, oout, ci, oin]
        } else {
            [a, oin, ci, oout]
        };
        pd.push(tuple);
    }
    (gauss, pd)
}

#[derive(PartialEq, PartialOrd)]
enum EventKey {
    Exact(Rational),
    Approx(f64),
}

impl EventKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (EventKey::Exact(a), EventKey::Exact(b)) => a.cmp(b),
            (EventKey::Approx(a), EventKey::Approx(b)) => a.partial_cmp(b).unwrap(),
            _ => unreachable!("mixed exact and approximate parameters in one diagram"),
        }
    }
}

impl KnotDiagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Structural validity: every crossing appears in the Gauss code once
    /// over and once under, PD edges each occur exactly twice, and the PD
    /// code closes into a single component.
    pub fn validate(&self) -> Result<()> {
        let c = self.crossings.len();
        if self.gauss_code.len() != 2 * c || self.pd_code.len() != c {
            return Err(Error::SymmetryViolation("code lengths mismatch".into()));
        }
        let mut seen = vec![(0u32, 0u32); c];
        for &g in &self.gauss_code {
            let i = g.unsigned_abs() as usize;
            if i == 0 || i > c {
                return Err(Error::SymmetryViolation(format!("gauss label {g} out of range")));
            }
            if g > 0 {
                seen[i - 1].0 += 1;
            } else {
                seen[i - 1].1 += 1;
            }
        }
        if seen.iter().any(|&(o, u)| o != 1 || u != 1) {
            return Err(Error::SymmetryViolation(
                "each crossing must appear once over and once under".into(),
            ));
        }
        let mut edge_count = vec![0u32; 2 * c + 1];
        for t in &self.pd_code {
            for &e in t {
                if e == 0 || e > 2 * c {
                    return Err(Error::SymmetryViolation(format!("pd edge {e} out of range")));
                }
                edge_count[e] += 1;
            }
        }
        if c > 0 && edge_count[1..].iter().any(|&n| n != 2) {
            return Err(Error::SymmetryViolation(
                "each pd edge must occur exactly twice".into(),
            ));
        }
        // single closed component: under/over successor walk covers all edges
        if c > 0 {
            let mut succ = vec![0usize; 2 * c + 1];
            for t in &self.pd_code {
                let [a, b, ci, d] = *t;
                succ[a] = ci;
                // over strand: one of b -> d or d -> b is edge-consecutive
                let next = |e: usize| if e == 2 * c { 1 } else { e + 1 };
                if next(d) == b {
                    succ[d] = b;
                } else if next(b) == d {
                    succ[b] = d;
                } else {
                    return Err(Error::UnsupportedLink(
                        "over strand edges are not consecutive".into(),
                    ));
                }
            }
            let mut e = 1usize;
            for _ in 0..2 * c {
                e = succ[e];
                if e == 0 {
                    return Err(Error::UnsupportedLink("broken edge walk".into()));
                }
            }
            if e != 1 {
                return Err(Error::UnsupportedLink("edge walk does not close".into()));
            }
        }
        Ok(())
    }

    /// PD code JSON: `{"params": ..., "pd": [[a,b,c,d], ...], "gauss": [...]}`.
    pub fn to_pd_json(&self) -> serde_json::Value {
        serde_json::json!({
            "params": params_json(&self.params),
            "pd": self.pd_code,
            "gauss": self.gauss_code,
        })
    }
}

impl Serialize for KnotDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("KnotDiagram", 3)?;
        st.serialize_field("params", &params_json(&self.params))?;
        st.serialize_field("pd", &self.pd_code)?;
        st.serialize_field("gauss", &self.gauss_code)?;
        st.end()
    }
}

pub fn params_json(params: &BilliardParams) -> serde_json::Value {
    let geometry = match params.geometry {
        Geometry::Cylinder => "cylinder",
        Geometry::FlatTorus => "flat-torus",
        Geometry::Cube => "cube",
    };
    let mut v = serde_json::json!({
        "geometry": geometry,
        "s": params.s,
        "n": params.n,
        "m": params.m,
        "phase": params.phase.to_string(),
    });
    if params.geometry == Geometry::Cylinder {
        v["beta"] = serde_json::json!(params.beta);
    }
    v
}

/// Check invariance of the crossing data under `t -> t + 1/d` (cyclic
/// period) or, for even `s` and `d = 2`, under `t -> t + 1/2` composed
/// with the height flip, realized on the diagram by an over/under swap.
pub fn verify_cyclic_symmetry(diagram: &KnotDiagram, d: u32) -> bool {
    if d < 2 {
        return false;
    }
    if diagram.crossings.is_empty() {
        return true;
    }
    if diagram.crossings.iter().any(|c| c.t_exact.is_none()) {
        return verify_cyclic_symmetry_slice(diagram, d);
    }
    let shift = rat(1, d as i64);
    if crossing_map_invariant(diagram, shift, false) {
        return true;
    }
    d == 2 && diagram.params.s % 2 == 0 && crossing_map_invariant(diagram, rat(1, 2), true)
}

fn crossing_map_invariant(diagram: &KnotDiagram, shift: Rational, swap_over: bool) -> bool {
    use std::collections::HashMap;
    // (t, t') -> (over parameter, sign)
    let mut table: HashMap<(Rational, Rational), (Rational, i8)> = HashMap::new();
    for c in &diagram.crossings {
        let (t, tp) = c.t_exact.unwrap();
        let over = if c.over_first { t } else { tp };
        table.insert((t, tp), (over, c.sign));
    }
    for c in &diagram.crossings {
        let (t, tp) = c.t_exact.unwrap();
        let (a, b) = (frac(t + shift), frac(tp + shift));
        let key = if a < b { (a, b) } else { (b, a) };
        let Some(&(over, sign)) = table.get(&key) else {
            return false;
        };
        if sign != c.sign {
            return false;
        }
        let my_over = if c.over_first { t } else { tp };
        let mapped_over = frac(my_over + shift);
        let over_matches = mapped_over == over;
        if over_matches == swap_over {
            return false;
        }
    }
    true
}

/// Slice-data variant: the shift acts by `k -> k + 2n/d` on the odd
/// residues, provided `d` divides `n` and the chord class is preserved.
fn verify_cyclic_symmetry_slice(diagram: &KnotDiagram, d: u32) -> bool {
    use std::collections::HashSet;
    let n = diagram.params.n as i64;
    if n % d as i64 != 0 {
        return false;
    }
    let step = 2 * n / d as i64;
    let key = |s: &SliceData, over_first: bool, sign: i8| {
        (s.k, s.k_prime, s.l, s.first_is_plus, over_first, sign)
    };
    let table: HashSet<_> = diagram
        .crossings
        .iter()
        .map(|c| key(&c.slice.unwrap(), c.over_first, c.sign))
        .collect();
    diagram.crossings.iter().all(|c| {
        let s = c.slice.unwrap();
        let shifted = SliceData {
            k: (s.k + step).rem_euclid(2 * n),
            k_prime: (s.k_prime + step).rem_euclid(2 * n),
            ..s
        };
        // the shifted pair may come back in swapped parameter order
        let a = key(&shifted, c.over_first, c.sign);
        let swapped = SliceData {
            k: shifted.k_prime,
            k_prime: shifted.k,
            l: s.l,
            first_is_plus: !s.first_is_plus,
        };
        let b = key(&swapped, !c.over_first, c.sign);
        table.contains(&a) || table.contains(&b)
    })
}

/// Read a diagram back from the PD JSON emitted by [`KnotDiagram::to_pd_json`],
/// or any standard PD code with edges numbered consecutively along the knot.
pub fn diagram_from_pd_json(text: &str) -> Result<PdInput> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::UnsupportedLink(format!("bad JSON: {e}")))?;
    let pd = v
        .get("pd")
        .and_then(|p| p.as_array())
        .ok_or_else(|| Error::UnsupportedLink("missing pd array".into()))?;
    let mut tuples = Vec::with_capacity(pd.len());
    for t in pd {
        let nums: Option<Vec<usize>> = t
            .as_array()
            .map(|a| a.iter().filter_map(|x| x.as_u64().map(|u| u as usize)).collect());
        match nums {
            Some(ns) if ns.len() == 4 => tuples.push([ns[0], ns[1], ns[2], ns[3]]),
            _ => return Err(Error::UnsupportedLink("pd tuples must be 4 integers".into())),
        }
    }
    PdInput::new(tuples)
}

/// A diagram given purely by its PD code.
#[derive(Debug, Clone)]
pub struct PdInput {
    pub pd: Vec<[usize; 4]>,
    /// Crossing signs recovered from the edge numbering.
    pub signs: Vec<i8>,
}

impl PdInput {
    pub fn new(pd: Vec<[usize; 4]>) -> Result<Self> {
        let c = pd.len();
        let mut edge_count = vec![0u32; 2 * c + 1];
        for t in &pd {
            for &e in t {
                if e == 0 || e > 2 * c {
                    return Err(Error::UnsupportedLink(format!("edge {e} out of range")));
                }
                edge_count[e] += 1;
            }
        }
        if c > 0 && edge_count[1..].iter().any(|&k| k != 2) {
            return Err(Error::UnsupportedLink(
                "each edge must appear exactly twice".into(),
            ));
        }
        let next = |e: usize| if e == 2 * c { 1 } else { e + 1 };
        let mut signs = Vec::with_capacity(c);
        for t in &pd {
            let [_, b, _, dd] = *t;
            if next(dd) == b {
                signs.push(1);
            } else if next(b) == dd {
                signs.push(-1);
            } else {
                return Err(Error::UnsupportedLink(
                    "over strand edges are not consecutive".into(),
                ));
            }
        }
        Ok(PdInput { pd, signs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1_has_no_crossings() {
        let p = BilliardParams::flat_torus(1, 7, 5).unwrap();
        assert!(enumerate_crossings(&p).unwrap().is_empty());
        let d = build_diagram(&p).unwrap();
        assert!(d.gauss_code.is_empty());
        assert_eq!(d.params.phase, rat(0, 1));
    }

    #[test]
    fn flat_torus_crossing_count() {
        for (s, n) in [(2u32, 3u32), (2, 5), (3, 7), (4, 11), (5, 13)] {
            let p = BilliardParams::flat_torus(s, n, 1).unwrap();
            let sites = enumerate_crossings(&p).unwrap();
            assert_eq!(sites.len(), ((s - 1) * n) as usize, "T({s},{n},.)");
        }
    }

    #[test]
    fn cylinder_crossing_count_and_sum_rule() {
        let p = BilliardParams::cylinder(3, 11, 16).unwrap();
        let sites = enumerate_crossings(&p).unwrap();
        assert_eq!(sites.len(), 22);
        for site in &sites {
            let s = site.slice.unwrap();
            assert_eq!(site.sum, rat(s.k + s.k_prime, 22));
            assert!((site.t + site.t_prime - to_f64(site.sum)).abs() < 1e-12);
        }
    }

    #[test]
    fn cylinder_needs_classical_range() {
        assert!(matches!(
            enumerate_crossings(&BilliardParams::cylinder(2, 3, 3).unwrap()),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn phase_selection() {
        let p = BilliardParams::flat_torus(2, 3, 5).unwrap();
        let sites = enumerate_crossings(&p).unwrap();
        let phase = choose_phase_for(&p, &sites).unwrap();
        for site in &sites {
            assert!(site_delta_sign(&p, site, phase).unwrap() != 0);
        }
        // gcd(s, m) > 1: no valid phase exists
        let q = BilliardParams {
            geometry: Geometry::FlatTorus,
            s: 2,
            n: 3,
            m: 2,
            phase: Rational::zero(),
            beta: std::f64::consts::TAU,
        };
        assert!(matches!(
            choose_phase_for(&q, &flat_torus_sites(2, 3)),
            Err(Error::NoValidPhase { .. })
        ));
    }

    #[test]
    fn diagrams_validate() {
        for p in [
            BilliardParams::flat_torus(2, 5, 3).unwrap(),
            BilliardParams::flat_torus(3, 7, 5).unwrap(),
            BilliardParams::cylinder(2, 5, 5).unwrap(),
            BilliardParams::cylinder(4, 11, 39).unwrap(),
            BilliardParams::cube(2, 11, 35).unwrap(),
        ] {
            let d = build_diagram(&p).unwrap();
            d.validate().unwrap();
            assert_eq!(d.gauss_code.len(), 2 * d.crossing_count());
        }
    }

    #[test]
    fn cube_crossing_count() {
        let p = BilliardParams::cube(2, 11, 35).unwrap();
        assert_eq!(enumerate_crossings(&p).unwrap().len(), 31); // 2*2*11 - 2 - 11
    }

    #[test]
    fn pd_roundtrip() {
        let d = build_diagram(&BilliardParams::flat_torus(2, 5, 3).unwrap()).unwrap();
        let text = d.to_pd_json().to_string();
        let back = diagram_from_pd_json(&text).unwrap();
        assert_eq!(back.pd, d.pd_code);
        let signs: Vec<i8> = d.crossings.iter().map(|c| c.sign).collect();
        assert_eq!(back.signs, signs);
    }

    #[test]
    fn sin_pi_sign_cases() {
        assert_eq!(sin_pi_sign(rat(1, 2)), 1);
        assert_eq!(sin_pi_sign(rat(3, 2)), -1);
        assert_eq!(sin_pi_sign(rat(7, 1)), 0);
        assert_eq!(sin_pi_sign(rat(-1, 4)), -1);
    }

    #[test]
    fn cyclic_symmetry_flat_torus() {
        // gcd(n, m) = 3: cyclic period 3
        let d = build_diagram(&BilliardParams::flat_torus(2, 3, 9).unwrap()).unwrap();
        assert!(verify_cyclic_symmetry(&d, 3));
        // even s: period 2 via the height flip
        let d2 = build_diagram(&BilliardParams::flat_torus(4, 5, 3).unwrap()).unwrap();
        assert!(verify_cyclic_symmetry(&d2, 2));
        // pairwise coprime, odd s: no cyclic period
        let d3 = build_diagram(&BilliardParams::flat_torus(3, 7, 5).unwrap()).unwrap();
        for d in 2..=6 {
            assert!(!verify_cyclic_symmetry(&d3, d));
        }
    }
}
