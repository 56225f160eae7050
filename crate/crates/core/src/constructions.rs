//! Presentations realizing prescribed knot modules.
//!
//! Each `realize_*` function takes module data, checks admissibility and
//! returns the group presentation together with a Wirtinger form when one
//! is available.

use std::fmt;
use std::path::Path;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::{factor_glnz, ElementaryOp, IntMatrix};
use crate::laurent::{to_i64, LambdaMatrix, LaurentPoly};
use crate::presentations::Presentation;
use crate::words::{gen, FreeEndo, Generator, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotModuleSpec {
    /// Λ/(α)
    CyclicPoly(LaurentPoly),
    /// presented by tM + (I − M)
    TrotterMatrix(IntMatrix),
    /// t − 1 acts by M
    TMinusOneAction(IntMatrix),
    /// t acts by T
    TAction(IntMatrix),
    DirectSum(Vec<LaurentPoly>),
}

impl KnotModuleSpec {
    pub fn cyclic(alpha: LaurentPoly) -> Result<Self> {
        let spec = KnotModuleSpec::CyclicPoly(alpha);
        spec.check_admissible()?;
        Ok(spec)
    }

    pub fn trotter(m: IntMatrix) -> Result<Self> {
        let spec = KnotModuleSpec::TrotterMatrix(m);
        spec.check_admissible()?;
        Ok(spec)
    }

    pub fn t_minus_one(m: IntMatrix) -> Result<Self> {
        let spec = KnotModuleSpec::TMinusOneAction(m);
        spec.check_admissible()?;
        Ok(spec)
    }

    pub fn t_action(m: IntMatrix) -> Result<Self> {
        let spec = KnotModuleSpec::TAction(m);
        spec.check_admissible()?;
        Ok(spec)
    }

    pub fn direct_sum(polys: Vec<LaurentPoly>) -> Result<Self> {
        let spec = KnotModuleSpec::DirectSum(polys);
        spec.check_admissible()?;
        Ok(spec)
    }

    pub fn check_admissible(&self) -> Result<()> {
        match self {
            KnotModuleSpec::CyclicPoly(alpha) => normalize_cyclic(alpha).map(|_| ()),
            KnotModuleSpec::TrotterMatrix(m) => {
                square(m)?;
                nonzero_det("det(M)", m)?;
                nonzero_det("det(M - I)", &m.sub(&IntMatrix::identity(m.rows())))
            }
            KnotModuleSpec::TMinusOneAction(m) => {
                square(m)?;
                unit_det("det(M)", m)?;
                unit_det("det(I + M)", &m.add(&IntMatrix::identity(m.rows())))
            }
            KnotModuleSpec::TAction(m) => {
                square(m)?;
                unit_det("det(T)", m)?;
                unit_det("det(T - I)", &m.sub(&IntMatrix::identity(m.rows())))
            }
            KnotModuleSpec::DirectSum(polys) => {
                if polys.is_empty() {
                    return Err(Error::Inadmissible("direct sum of no summands".into()));
                }
                polys.iter().try_for_each(|p| normalize_cyclic(p).map(|_| ()))
            }
        }
    }

    /// Square presentation matrix of the module over Λ.
    pub fn square_matrix(&self) -> LambdaMatrix {
        match self {
            KnotModuleSpec::CyclicPoly(a) => LambdaMatrix::diagonal(std::slice::from_ref(a)),
            KnotModuleSpec::TrotterMatrix(m) => LambdaMatrix::linear(m, &IntMatrix::identity(m.rows()).sub(m)),
            KnotModuleSpec::TMinusOneAction(m) => {
                let id = IntMatrix::identity(m.rows());
                LambdaMatrix::linear(&id, &IntMatrix::zeros(m.rows(), m.rows()).sub(&id.add(m)))
            }
            KnotModuleSpec::TAction(m) => {
                let id = IntMatrix::identity(m.rows());
                LambdaMatrix::linear(&id, &IntMatrix::zeros(m.rows(), m.rows()).sub(m))
            }
            KnotModuleSpec::DirectSum(ps) => LambdaMatrix::diagonal(ps),
        }
    }

    /// Determinant of [`Self::square_matrix`], unit-normalized.
    pub fn order(&self) -> Result<LaurentPoly> {
        Ok(self.square_matrix().det()?.normalize_unit())
    }

    /// Parse a module-spec file. Matrix paths are resolved against `base`.
    pub fn parse(text: &str, base: Option<&Path>) -> Result<Self> {
        let mut found = None;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if found.is_some() {
                return Err(Error::parse(n + 1, "more than one module line"));
            }
            let rest = line
                .strip_prefix("module")
                .ok_or_else(|| Error::parse(n + 1, "expected `module <kind> ...`"))?
                .trim_start();
            let (kind, arg) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
            let arg = arg.trim();
            let load_matrix = |file: &str| -> Result<IntMatrix> {
                let path = base.map(|b| b.join(file)).unwrap_or_else(|| file.into());
                IntMatrix::parse(
                    &std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
                )
            };
            found = Some(match kind {
                "cyclic" => KnotModuleSpec::cyclic(parse_poly_line(arg)?)?,
                "trotter" => KnotModuleSpec::trotter(load_matrix(arg)?)?,
                "tminus1" => KnotModuleSpec::t_minus_one(load_matrix(arg)?)?,
                "taction" => KnotModuleSpec::t_action(load_matrix(arg)?)?,
                "sum" => KnotModuleSpec::direct_sum(
                    arg.split(';').map(|s| parse_poly_line(s.trim())).collect::<Result<_>>()?,
                )?,
                other => return Err(Error::parse(n + 1, format!("unknown module kind `{other}`"))),
            });
        }
        found.ok_or_else(|| Error::parse(0, "no module line"))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        KnotModuleSpec::parse(&text, path.parent())
    }
}

impl fmt::Display for KnotModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotModuleSpec::CyclicPoly(a) => write!(f, "Λ/({a})"),
            KnotModuleSpec::TrotterMatrix(m) => write!(f, "Trotter module of rank {}", m.rows()),
            KnotModuleSpec::TMinusOneAction(m) => write!(f, "(t - 1)-action module of rank {}", m.rows()),
            KnotModuleSpec::TAction(m) => write!(f, "t-action module of rank {}", m.rows()),
            KnotModuleSpec::DirectSum(ps) => {
                let parts: Vec<String> = ps.iter().map(|a| format!("Λ/({a})")).collect();
                f.write_str(&parts.join(" + "))
            }
        }
    }
}

/// Accepts `poly <low> <coeffs...>` or comma-separated coefficients.
pub fn parse_poly_line(s: &str) -> Result<LaurentPoly> {
    if s.trim_start().starts_with("poly") {
        LaurentPoly::parse_text(s)
    } else {
        LaurentPoly::parse_coeffs(s)
    }
}

fn square(m: &IntMatrix) -> Result<()> {
    if m.is_square() && m.rows() > 0 {
        Ok(())
    } else {
        Err(Error::Dimension(format!("expected a nonempty square matrix, got {}x{}", m.rows(), m.cols())))
    }
}

fn nonzero_det(what: &str, m: &IntMatrix) -> Result<()> {
    let d = m.det()?;
    if d.is_zero() {
        Err(Error::Inadmissible(format!("{what} = 0")))
    } else {
        Ok(())
    }
}

fn unit_det(what: &str, m: &IntMatrix) -> Result<()> {
    let d = m.det()?;
    if d.abs().is_one() {
        Ok(())
    } else {
        Err(Error::Inadmissible(format!("{what} = {d}, expected ±1")))
    }
}

/// Shift α to lowest exponent 0 and fix the sign so that α(1) = 1.
fn normalize_cyclic(alpha: &LaurentPoly) -> Result<LaurentPoly> {
    if alpha.is_zero() {
        return Err(Error::Inadmissible("α = 0".into()));
    }
    let shifted = alpha.shift(-alpha.low());
    let eps = shifted.augmentation();
    if eps.is_one() {
        Ok(shifted)
    } else if (-&eps).is_one() {
        Ok(-&shifted)
    } else {
        Err(Error::Inadmissible(format!("α(1) = {eps}, expected ±1")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RealizationNotes {
    /// Commutator subgroup is finitely generated (cyclic case: extreme coefficients ±1).
    pub fg_commutator: bool,
    pub is_ascending_hnn: bool,
    pub wirtinger_available: bool,
}

#[derive(Clone, Debug)]
pub struct RealizationResult {
    pub primary_presentation: Presentation,
    pub wirtinger_presentation: Option<Presentation>,
    pub meridian: Generator,
    pub module_spec: KnotModuleSpec,
    pub notes: RealizationNotes,
}

impl RealizationResult {
    /// The Wirtinger form when present, else the primary presentation.
    pub fn best_presentation(&self) -> &Presentation {
        self.wirtinger_presentation.as_ref().unwrap_or(&self.primary_presentation)
    }
}

fn xs(prefix: &str, r: usize) -> Vec<Generator> {
    (1..=r).map(|i| Generator::indexed(prefix, i)).collect()
}

/// Like [`xs`] but unindexed in rank one.
fn names(prefix: &str, r: usize) -> Vec<Generator> {
    if r == 1 {
        vec![gen(prefix)]
    } else {
        xs(prefix, r)
    }
}

fn letter(g: &Generator) -> Word {
    Word::generator(g.clone())
}

/// `target⁻¹ · conj · source · conj⁻¹`
fn wirtinger(target: &Generator, conj: &Word, source: &Generator) -> Word {
    letter(target).inverse().product(&letter(source).conjugate(conj))
}

pub fn realize_trotter(m: &IntMatrix) -> Result<RealizationResult> {
    let spec = KnotModuleSpec::trotter(m.clone())?;
    let r = m.rows();
    let t = gen("t");
    let x = names("x", r);
    let y = names("y", r);
    let s = names("s", r);
    let entry = |i: usize, j: usize| to_i64(m.get(i, j));

    let mut rels = Vec::with_capacity(2 * r);
    for i in 0..r {
        let mut prod = Word::identity();
        for j in 0..r {
            prod = prod.product(&Word::power_of(x[j].clone(), entry(i, j)?));
        }
        rels.push(letter(&y[i]).inverse().product(&prod));
    }
    for i in 0..r {
        let comm = letter(&y[i]).conjugate(&letter(&t)).product(&letter(&y[i]).inverse());
        rels.push(comm.product(&letter(&x[i])));
    }
    let mut gens = vec![t.clone()];
    gens.extend(x.iter().cloned());
    gens.extend(y.iter().cloned());
    let primary = Presentation::new(gens, rels)?;

    let tinv = letter(&t).inverse();
    let mut wrels = Vec::with_capacity(r);
    for i in 0..r {
        let mut big_y = Word::identity();
        for j in 0..r {
            big_y = big_y.product(&letter(&s[j]).product(&tinv).pow(entry(i, j)?));
        }
        wrels.push(wirtinger(&s[i], &big_y, &t));
    }
    let mut wgens = vec![t.clone()];
    wgens.extend(s);
    let wirt = Presentation::new(wgens, wrels)?;

    Ok(RealizationResult {
        primary_presentation: primary,
        wirtinger_presentation: Some(wirt),
        meridian: t,
        module_spec: spec,
        notes: RealizationNotes { fg_commutator: false, is_ascending_hnn: false, wirtinger_available: true },
    })
}

/// Relators of the cyclic construction with meridian `t`, base generator
/// `x` and Wirtinger generator `u`. Returns (primary, wirtinger, fg flag).
fn cyclic_relators(alpha: &LaurentPoly, t: &Generator, x: &Generator, u: &Generator) -> Result<(Word, Word, bool)> {
    let alpha = normalize_cyclic(alpha)?;
    let a = alpha.coeffs();
    let fg = a.first().is_some_and(|c| c.abs().is_one()) && a.last().is_some_and(|c| c.abs().is_one());
    let beta = (&alpha - &LaurentPoly::one()).div_exact_t_minus_1()?;
    let mut w = Word::identity();
    let r = alpha.high();
    for i in 0..r {
        let b = to_i64(&beta.coeff(i))?;
        if b != 0 {
            w = w.product(&Word::power_of(x.clone(), b).conjugate(&Word::power_of(t.clone(), i)));
        }
    }
    let tw = letter(t).conjugate(&w).product(&letter(t).inverse());
    let primary = letter(x).inverse().product(&tw);
    let big_w = w.substitute(|g| (g == x).then(|| letter(u).product(&letter(t).inverse())));
    Ok((primary, wirtinger(u, &big_w, t), fg))
}

pub fn realize_cyclic(alpha: &LaurentPoly) -> Result<RealizationResult> {
    let spec = KnotModuleSpec::cyclic(alpha.clone())?;
    let (t, x, u) = (gen("t"), gen("x"), gen("u"));
    let (primary, wirt, fg) = cyclic_relators(alpha, &t, &x, &u)?;
    Ok(RealizationResult {
        primary_presentation: Presentation::new(vec![t.clone(), x], vec![primary])?,
        wirtinger_presentation: Some(Presentation::new(vec![t.clone(), u], vec![wirt])?),
        meridian: t,
        module_spec: spec,
        notes: RealizationNotes { fg_commutator: fg, is_ascending_hnn: false, wirtinger_available: true },
    })
}

/// Connected sum of the cyclic realizations, sharing the meridian.
pub fn realize_sum(polys: &[LaurentPoly]) -> Result<RealizationResult> {
    let spec = KnotModuleSpec::direct_sum(polys.to_vec())?;
    let t = gen("t");
    let k = polys.len();
    let (x, u) = (names("x", k), names("u", k));
    let mut prim = Vec::with_capacity(k);
    let mut wirt = Vec::with_capacity(k);
    let mut fg = true;
    for (i, alpha) in polys.iter().enumerate() {
        let (p, w, f) = cyclic_relators(alpha, &t, &x[i], &u[i])?;
        prim.push(p);
        wirt.push(w);
        fg &= f;
    }
    let mut pg = vec![t.clone()];
    pg.extend(x);
    let mut wg = vec![t.clone()];
    wg.extend(u);
    Ok(RealizationResult {
        primary_presentation: Presentation::new(pg, prim)?,
        wirtinger_presentation: Some(Presentation::new(wg, wirt)?),
        meridian: t,
        module_spec: spec,
        notes: RealizationNotes { fg_commutator: fg, is_ascending_hnn: false, wirtinger_available: true },
    })
}

fn lift_one(op: ElementaryOp, domain: &[Generator]) -> Result<FreeEndo> {
    let r = domain.len();
    let mut images: Vec<Word> = domain.iter().map(letter).collect();
    match op {
        ElementaryOp::AddMultiple { target, source, factor } => {
            if target >= r || source >= r || target == source {
                return Err(Error::Dimension(format!("{op} invalid for rank {r}")));
            }
            images[target] = letter(&domain[target]).product(&Word::power_of(domain[source].clone(), factor));
        }
        ElementaryOp::Swap(i, j) => {
            if i >= r || j >= r {
                return Err(Error::Dimension(format!("{op} invalid for rank {r}")));
            }
            images.swap(i, j);
        }
        ElementaryOp::Negate(i) => {
            if i >= r {
                return Err(Error::Dimension(format!("{op} invalid for rank {r}")));
            }
            images[i] = images[i].inverse();
        }
    }
    FreeEndo::new(domain.to_vec(), images)
}

/// Nielsen lift of a product of elementary matrices to an automorphism of
/// the free group on `x1..xr`; returns the automorphism and its inverse.
pub fn lift_elementary(ops: &[ElementaryOp], r: usize) -> Result<(FreeEndo, FreeEndo)> {
    let domain = xs("x", r);
    let mut forward = FreeEndo::identity(domain.clone());
    let mut backward = FreeEndo::identity(domain.clone());
    for op in ops {
        forward = forward.compose(&lift_one(*op, &domain)?)?;
        backward = lift_one(op.inverse(), &domain)?.compose(&backward)?;
    }
    Ok((forward, backward))
}

pub fn realize_t_minus_one(m: &IntMatrix) -> Result<RealizationResult> {
    let spec = KnotModuleSpec::t_minus_one(m.clone())?;
    let r = m.rows();
    let (mu, nu) = lift_elementary(&factor_glnz(m)?, r)?;
    let t = gen("t");
    let x = mu.domain().to_vec();
    let s = xs("s", r);

    let rels = (0..r)
        .map(|i| {
            let lhs = letter(&x[i]).conjugate(&letter(&t));
            lhs.product(&letter(&x[i]).product(mu.image(i)).inverse())
        })
        .collect();
    let mut gens = vec![t.clone()];
    gens.extend(x.iter().cloned());
    let primary = Presentation::new(gens, rels)?;

    let tinv = letter(&t).inverse();
    let big_x: Vec<Word> = (0..r)
        .map(|j| nu.image(j).substitute(|g| x.iter().position(|h| h == g).map(|k| letter(&s[k]).product(&tinv))))
        .collect();
    let wrels = (0..r).map(|i| wirtinger(&s[i], &big_x[i].inverse(), &t)).collect();
    let mut wgens = vec![t.clone()];
    wgens.extend(s);
    let wirt = Presentation::new(wgens, wrels)?;

    Ok(RealizationResult {
        primary_presentation: primary,
        wirtinger_presentation: Some(wirt),
        meridian: t,
        module_spec: spec,
        notes: RealizationNotes { fg_commutator: true, is_ascending_hnn: true, wirtinger_available: true },
    })
}

#[doc(hidden)]
pub use realize_t_minus_one as realize_lemma4;

/// Semidirect product of a free group with ℤ acting by a lift of `T`.
pub fn realize_t_action(tm: &IntMatrix) -> Result<RealizationResult> {
    let spec = KnotModuleSpec::t_action(tm.clone())?;
    let r = tm.rows();
    let (tau, _) = lift_elementary(&factor_glnz(tm)?, r)?;
    let t = gen("t");
    let x = tau.domain().to_vec();
    let rels = (0..r).map(|i| letter(&x[i]).conjugate(&letter(&t)).product(&tau.image(i).inverse())).collect();
    let mut gens = vec![t.clone()];
    gens.extend(x);
    Ok(RealizationResult {
        primary_presentation: Presentation::new(gens, rels)?,
        wirtinger_presentation: None,
        meridian: t,
        module_spec: spec,
        notes: RealizationNotes { fg_commutator: true, is_ascending_hnn: false, wirtinger_available: false },
    })
}

#[doc(hidden)]
pub use realize_t_action as realize_lemma3_group;

/// Exponent of each conjugate `t^k x t^{-k}` in a relator with zero total
/// `t`-exponent, listed by `k`.
pub fn conjugate_exponents(w: &Word, t: &Generator, x: &Generator) -> Vec<(i64, i64)> {
    let mut level = 0i64;
    let mut acc: std::collections::BTreeMap<i64, i64> = Default::default();
    for (g, e) in w.syllables() {
        if g == t {
            level += e;
        } else if g == x {
            *acc.entry(level).or_insert(0) += e;
        }
    }
    acc.into_iter().filter(|(_, e)| *e != 0).collect()
}
