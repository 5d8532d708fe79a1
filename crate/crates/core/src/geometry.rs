//! Geometry at rational points: multiplicities, local Milnor and Tjurina
//! numbers, modular points of pencils, and adding the lines of a pencil that
//! are tangent to a curve.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::poly::pencil::normalize_point;
use crate::poly::{
    resultant_t, restrict_to_pencil, BiPoly, BinaryForm, HomogeneousPoly, PencilRestriction,
    UniPoly,
};

/// Primitive integer coordinates with the first nonzero entry positive.
pub type ProjPoint = [BigInt; 3];

pub fn point(a: i64, b: i64, c: i64) -> Result<ProjPoint> {
    normalize_point(&[a.into(), b.into(), c.into()])
}

pub fn format_point(p: &ProjPoint) -> String {
    format!("({}:{}:{})", p[0], p[1], p[2])
}

/// Multiplicity of the curve at `p`; 0 when `p` is not on it.
pub fn multiplicity_at(f: &HomogeneousPoly, p: &ProjPoint) -> Result<usize> {
    Ok(restrict_to_pencil(f, p)?.multiplicity())
}

/// Local invariants of a rational singular point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSingularity {
    pub point: String,
    pub multiplicity: usize,
    pub mu: usize,
    pub tau: usize,
    /// `μ = τ`.
    pub quasi_homogeneous: bool,
}

/// Affine polynomial in `(x, y)` as a map from exponents to integers.
type Affine = std::collections::BTreeMap<(u32, u32), BigInt>;

fn affine_chart(g: &HomogeneousPoly) -> Affine {
    let g = g.primitive();
    g.terms()
        .map(|(m, c)| ((m.a, m.b), c.to_integer()))
        .collect()
}

fn affine_derivative(a: &Affine, var: usize) -> Affine {
    let mut out = Affine::new();
    for (&(i, j), c) in a {
        let e = if var == 0 { i } else { j };
        if e == 0 {
            continue;
        }
        let key = if var == 0 { (i - 1, j) } else { (i, j - 1) };
        out.insert(key, c * BigInt::from(e));
    }
    out
}

/// `dim Q[x, y]_(0) / (gens)` at the origin, by truncating jets at order `n`
/// until the dimension repeats.
fn local_length(gens: &[Affine], cap: usize) -> Result<usize> {
    let mut prev: Option<usize> = None;
    for n in 1..=cap as u32 + 2 {
        let idx = |i: u32, j: u32| -> usize {
            let k = i + j;
            (k * (k + 1) / 2 + j) as usize
        };
        let ncols = (n * (n + 1) / 2) as usize;
        let mut rows = Vec::new();
        for g in gens {
            let ord = g.keys().map(|&(i, j)| i + j).min().unwrap_or(n);
            for k in 0..n.saturating_sub(ord) {
                for j in 0..=k {
                    let i = k - j;
                    let mut row = vec![BigInt::zero(); ncols];
                    let mut any = false;
                    for (&(a, b), c) in g {
                        if a + b + k < n {
                            row[idx(a + i, b + j)] = c.clone();
                            any = true;
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
        let dim = ncols - Echelon::compute(rows, ncols).rank();
        if prev == Some(dim) {
            return Ok(dim);
        }
        if dim > cap {
            break;
        }
        prev = Some(dim);
    }
    Err(Error::InvalidInput(
        "the singularity is not isolated (local algebra exceeds (d-1)^2)".into(),
    ))
}

/// Local Milnor number `μ` (from the two affine partials) and Tjurina number
/// `τ` (adding the function itself) at a rational singular point.
pub fn local_milnor_tjurina(f: &HomogeneousPoly, p: &ProjPoint) -> Result<LocalSingularity> {
    let pr = restrict_to_pencil(f, p)?;
    let m = pr.multiplicity();
    if m == 0 {
        return Err(Error::InvalidInput(format!("{} is not on the curve", format_point(&pr.base_point))));
    }
    if m == 1 {
        return Err(Error::InvalidInput(format!("{} is a smooth point", format_point(&pr.base_point))));
    }
    let d = f.degree() as usize;
    let cap = (d - 1) * (d - 1);
    let a = affine_chart(&pr.moved);
    let ax = affine_derivative(&a, 0);
    let ay = affine_derivative(&a, 1);
    let mu = local_length(&[ax.clone(), ay.clone()], cap)?;
    let tau = local_length(&[a, ax, ay], cap)?;
    Ok(LocalSingularity {
        point: format_point(&pr.base_point),
        multiplicity: m,
        mu,
        tau,
        quasi_homogeneous: mu == tau,
    })
}

fn poly_string(p: &UniPoly) -> String {
    p.to_string().replace('t', "s")
}

/// Exact verdict on whether `p` is a modular point, with the witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModularityCertificate {
    pub point: String,
    pub multiplicity: usize,
    /// Product of the distinct tangent lines at `p`.
    pub tangent_cone: String,
    /// Product of the line components of the curve through `p`.
    pub component_lines: String,
    /// Every tangent line at `p` is a component.
    pub tangents_are_components: bool,
    /// Squarefree discriminant of the pencil in the chart `u = 1`, in `s`.
    pub discriminant: String,
    /// Every root of the discriminant is the direction of a component.
    pub discriminant_supported_on_components: bool,
    /// The line of direction `(1:0)` was either a component or checked
    /// directly.
    pub infinite_direction_ok: bool,
    /// Directions `(s:u)` of component lines, in the moved coordinates.
    pub exceptional_directions: String,
    pub modular: bool,
}

/// Decides exactly whether every line `L` through `p` that is not a component
/// meets the curve only at `p` with multiplicity `mult_p` and transversally
/// elsewhere.
pub fn is_modular_point(f: &HomogeneousPoly, p: &ProjPoint) -> Result<ModularityCertificate> {
    let pr = restrict_to_pencil(f, p)?;
    let m = pr.multiplicity();
    if m == 0 {
        return Err(Error::InvalidInput(format!(
            "{} is not on the curve",
            format_point(&pr.base_point)
        )));
    }
    let d = f.degree() as usize;
    let layers = &pr.layers[m..];
    let components = layers
        .iter()
        .filter(|l| !l.is_zero())
        .fold(None::<BinaryForm>, |acc, l| {
            Some(match acc {
                None => l.clone(),
                Some(g) => binary_gcd(&g, l),
            })
        })
        .expect("the tangent cone is nonzero");
    let cone_sqfree = pr.layers[m].squarefree_part();
    let tangents_are_components = layers
        .iter()
        .all(|l| l.is_zero() || cone_sqfree.divides(l));

    let comp_chart = components.dehomogenize();
    let (discriminant, disc_ok) = if !tangents_are_components {
        (String::from("not computed"), false)
    } else if d - m <= 1 {
        (String::from("1"), true)
    } else {
        let disc = resultant_t(&pr.chart, &pr.chart.derivative_t())?;
        if disc.is_zero() {
            return Err(Error::NotReduced(
                "every line of the pencil meets the curve with a multiple point".into(),
            ));
        }
        let sq = disc.squarefree_part()?;
        let ok = !comp_chart.is_zero() && comp_chart.squarefree_part()?.divisible_by(&sq)
            || sq.degree() == Some(0);
        (poly_string(&sq), ok)
    };
    let infinite_direction_ok = if components.u_multiplicity() > 0 {
        true
    } else {
        tangents_are_components && (d - m <= 1 || pr.at_infinity.is_squarefree())
    };
    let modular = tangents_are_components && disc_ok && infinite_direction_ok;
    Ok(ModularityCertificate {
        point: format_point(&pr.base_point),
        multiplicity: m,
        tangent_cone: pr.lines_of(&cone_sqfree).primitive().to_string(),
        component_lines: pr.lines_of(&components).primitive().to_string(),
        tangents_are_components,
        discriminant,
        discriminant_supported_on_components: disc_ok,
        infinite_direction_ok,
        exceptional_directions: components.to_string(),
        modular,
    })
}

fn binary_gcd(a: &BinaryForm, b: &BinaryForm) -> BinaryForm {
    let k = a.u_multiplicity().min(b.u_multiplicity());
    let g = a.dehomogenize().gcd(&b.dehomogenize());
    BinaryForm::from_dehomogenized(&g, k)
}

/// Rational roots of height at most `height`, found by testing the
/// candidates allowed by the rational root theorem.
pub fn rational_roots(p: &UniPoly, height: u64) -> Vec<BigRational> {
    let mut out = Vec::new();
    if p.is_zero() {
        return out;
    }
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let zeros = ints.iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push(BigRational::zero());
        ints.drain(..zeros);
    }
    let (c0, lc) = (ints[0].abs(), ints.last().expect("nonzero").abs());
    let divisors = |n: &BigInt| -> Vec<u64> {
        (1..=height).filter(|&k| (n % BigInt::from(k)).is_zero()).collect()
    };
    let n = ints.len() - 1;
    let at_one: BigInt = ints.iter().sum();
    let at_minus_one: BigInt = ints
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 0 { c.clone() } else { -c })
        .sum();
    // A root a/b in lowest terms forces b - a | q(1) and b + a | q(-1).
    let divides = |k: i64, v: &BigInt| k == 0 || (v % BigInt::from(k)).is_zero();
    let vanishes = |a: i64, b: u64| -> bool {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let mut bpow = BigInt::one();
        let mut h = ints[n].clone();
        for i in (0..n).rev() {
            bpow *= &b;
            h = h * &a + &ints[i] * &bpow;
        }
        h.is_zero()
    };
    for &b in &divisors(&lc) {
        for &a in &divisors(&c0) {
            if a.gcd(&b) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let a = a as i64 * sign;
                let (minus, plus) = (b as i64 - a, b as i64 + a);
                if minus == 0 && !at_one.is_zero() || plus == 0 && !at_minus_one.is_zero() {
                    continue;
                }
                if !divides(minus, &at_one) || !divides(plus, &at_minus_one) {
                    continue;
                }
                if vanishes(a, b) {
                    out.push(BigRational::new(BigInt::from(a), BigInt::from(b)));
                }
            }
        }
    }
    out.sort();
    out
}

/// `f(x, y, 1)` with `y` as the main variable.
fn chart_in_y(g: &HomogeneousPoly) -> BiPoly {
    let d = g.degree() as usize;
    let mut parts = vec![vec![BigRational::zero(); d + 1]; d + 1];
    for (m, c) in g.terms() {
        parts[m.b as usize][m.a as usize] = c.clone();
    }
    BiPoly::new(parts.into_iter().map(UniPoly::new).collect())
}

/// Singular points with rational coordinates of height at most `height`
/// (per coordinate in the elimination).
pub fn rational_singular_points(f: &HomogeneousPoly, height: u64, seed: u64) -> Result<Vec<ProjPoint>> {
    let f = f.primitive();
    let partials = f.partials()?;
    let is_singular = |p: &[BigRational; 3]| partials.iter().all(|q| q.eval(p).is_zero()) && f.eval(p).is_zero();
    let q = |v: i64| BigRational::from_integer(v.into());
    let mut found: Vec<[BigRational; 3]> = Vec::new();
    if is_singular(&[q(1), q(0), q(0)]) {
        found.push([q(1), q(0), q(0)]);
    }
    // (x : 1 : 0)
    let at_infinity: Vec<UniPoly> = partials
        .iter()
        .map(|p| {
            let mut c = vec![BigRational::zero(); p.degree() as usize + 1];
            for (m, v) in p.terms() {
                if m.c == 0 {
                    c[m.a as usize] = v.clone();
                }
            }
            UniPoly::new(c)
        })
        .collect();
    let g = at_infinity.iter().fold(UniPoly::zero(), |a, b| a.gcd(b));
    if g.is_zero() {
        return Err(Error::NotReduced("the line z = 0 is singular".into()));
    }
    for x0 in rational_roots(&g, height) {
        found.push([x0, q(1), q(0)]);
    }
    // (x : y : 1)
    let charts: Vec<BiPoly> = partials.iter().map(chart_in_y).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let combo = |c: [i64; 3]| -> BiPoly {
        let h = partials
            .iter()
            .zip(c)
            .fold(HomogeneousPoly::zero(f.degree() - 1), |acc, (p, k)| acc.add(&p.scale(&q(k))));
        chart_in_y(&h)
    };
    let mut eliminant = None;
    for _ in 0..8 {
        let a = combo(std::array::from_fn(|_| rng.gen_range(-9..=9)));
        let b = combo(std::array::from_fn(|_| rng.gen_range(-9..=9)));
        if a.deg_t().unwrap_or(0) == 0 || b.deg_t().unwrap_or(0) == 0 {
            continue;
        }
        let r = resultant_t(&a, &b)?;
        if !r.is_zero() {
            eliminant = Some(r);
            break;
        }
    }
    let xs = match eliminant {
        Some(r) => rational_roots(&r, height),
        None => {
            // Every partial is free of y in this chart or the eliminant keeps
            // vanishing; fall back to the common factor in x.
            let c0: Vec<UniPoly> = charts.iter().map(|c| c.coeff_t(0)).collect();
            let g = c0.iter().fold(UniPoly::zero(), |a, b| a.gcd(b));
            if g.is_zero() {
                return Err(Error::NotReduced("the singular locus is not finite".into()));
            }
            rational_roots(&g, height)
        }
    };
    for x0 in xs {
        let in_y: Vec<UniPoly> = charts.iter().map(|c| c.eval_s(&x0)).collect();
        let g = in_y.iter().fold(UniPoly::zero(), |a, b| a.gcd(b));
        if g.is_zero() {
            return Err(Error::NotReduced(format!("the line x = {x0} z is singular")));
        }
        for y0 in rational_roots(&g, height) {
            let p = [x0.clone(), y0, q(1)];
            if is_singular(&p) {
                found.push(p);
            }
        }
    }
    let mut points: Vec<ProjPoint> = found
        .into_iter()
        .map(|p| {
            let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let ints: [BigInt; 3] =
                std::array::from_fn(|i| (&p[i] * BigRational::from_integer(l.clone())).to_integer());
            normalize_point(&ints)
        })
        .collect::<Result<_>>()?;
    points.sort();
    points.dedup();
    Ok(points)
}

/// Default coordinate height for the rational singular point search.
pub const DEFAULT_HEIGHT: u64 = 10_000;

/// Result of searching for modular points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupersolvableReport {
    pub candidates_tested: usize,
    pub modular_points: Vec<String>,
    pub certificates: Vec<ModularityCertificate>,
    /// No modular point was found; one with irrational coordinates, or of
    /// larger height, would go unnoticed.
    pub incomplete: bool,
}

/// Tests the rational singular points and the extra candidates on the curve.
pub fn supersolvable_check(
    f: &HomogeneousPoly,
    extra_candidates: &[ProjPoint],
    seed: u64,
) -> Result<SupersolvableReport> {
    let mut candidates = rational_singular_points(f, DEFAULT_HEIGHT, seed)?;
    for c in extra_candidates {
        let c = normalize_point(c)?;
        if !candidates.contains(&c) && multiplicity_at(f, &c)? > 0 {
            candidates.push(c);
        }
    }
    let mut certificates = Vec::new();
    for c in &candidates {
        let cert = is_modular_point(f, c)?;
        if cert.modular {
            certificates.push(cert);
        }
    }
    Ok(SupersolvableReport {
        candidates_tested: candidates.len(),
        modular_points: certificates.iter().map(|c| c.point.clone()).collect(),
        incomplete: certificates.is_empty(),
        certificates,
    })
}

/// The lines through `p` that are tangent to the curve somewhere or pass
/// through one of its singular points, as one binary form.
#[derive(Clone, Debug)]
pub struct AddedLinesDivisor {
    pub base_point: ProjPoint,
    /// Squarefree form in the pencil coordinates.
    pub form: BinaryForm,
    /// The same lines as a product of linear forms in `x, y, z`.
    pub lines: HomogeneousPoly,
    pub degree: usize,
}

fn pencil_off_curve(f0: &HomogeneousPoly, p: &ProjPoint) -> Result<PencilRestriction> {
    let pr = restrict_to_pencil(f0, p)?;
    if pr.multiplicity() > 0 {
        return Err(Error::InvalidInput(format!(
            "{} lies on the curve; the construction needs a point off it",
            format_point(&pr.base_point)
        )));
    }
    Ok(pr)
}

pub fn tangent_lines_through(f0: &HomogeneousPoly, p: &ProjPoint) -> Result<AddedLinesDivisor> {
    let pr = pencil_off_curve(f0, p)?;
    let disc = resultant_t(&pr.chart, &pr.chart.derivative_t())?;
    if disc.is_zero() {
        return Err(Error::NotReduced("the discriminant of the pencil vanishes".into()));
    }
    let sq = disc.squarefree_part()?;
    let u_power = usize::from(!pr.at_infinity.is_squarefree());
    let form = BinaryForm::from_dehomogenized(&sq, u_power);
    let lines = pr.lines_of(&form).primitive();
    Ok(AddedLinesDivisor {
        base_point: pr.base_point.clone(),
        degree: form.degree(),
        form,
        lines,
    })
}

/// `f0` times the lines of [`tangent_lines_through`].
pub fn build_supersolvable(f0: &HomogeneousPoly, p: &ProjPoint) -> Result<HomogeneousPoly> {
    let div = tangent_lines_through(f0, p)?;
    Ok(f0.mul(&div.lines).primitive())
}
