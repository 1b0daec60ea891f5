//! Principal realizations of braided rack spaces over `kG` and `k^G`.
//!
//! A realization is a datum `(G, X, ·, g, χ)`: `G` acts on the rack, `g`
//! is a map `X → G` intertwining that action with conjugation, and the
//! `χ_i` are a 1-cocycle of characters. Over `kG` it gives the
//! Yetter-Drinfeld module `V` with `h·v_x = χ_x(h) v_{h·x}` and
//! `v_x ↦ g_x ⊗ v_x`. Over `k^G` we use the image of `V` under the usual
//! functor between the two categories: `δ_t·w_x = [t = g_x⁻¹] w_x` and
//! `w_x ↦ Σ_t χ_x(t⁻¹) δ_t ⊗ w_{t⁻¹·x}`.

mod group;
pub mod smash;

use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use group::{function_algebra_group_likes, FiniteGroup, Hopf, HopfKind};

use crate::braided::{BraidedSpace, Flavor};
use crate::builtin::rack_by_name;
use crate::cocycle::{chi, Cocycle};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::rack::Rack;
use crate::rational::{fmt_q, parse_q, q, Q};

/// A rational-valued function on a finite group, i.e. an element of `k^G`
/// in the δ-basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFunction(#[serde(with = "crate::rational::vec")] pub Vec<Q>);

impl GroupFunction {
    pub fn at(&self, g: usize) -> &Q {
        &self.0[g]
    }
}

/// Which Hopf algebra the realization lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// `kG`
    Pointed,
    /// `k^G`
    Copointed,
}

impl Side {
    pub fn hopf_kind(self) -> HopfKind {
        match self {
            Side::Pointed => HopfKind::GroupAlgebra,
            Side::Copointed => HopfKind::FunctionAlgebra,
        }
    }
}

/// How the characters `χ_x` are given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChiSpec {
    /// `χ_x = sgn` for all x
    Sgn,
    /// `χ_x(h) = chi(h, x)` for transposition racks
    MsChi,
    /// `table[x][h]`
    Table(Vec<Vec<Q>>),
}

#[derive(Clone, Debug)]
pub struct PrincipalRealization {
    pub group: FiniteGroup,
    pub rack: Rack,
    /// `action[h][x] = h·x`
    pub action: Vec<Vec<usize>>,
    /// `g[x]` as a group index
    pub g: Vec<usize>,
    /// `chi[x][h] = χ_x(h)`
    pub chi: Vec<Vec<Q>>,
}

impl PrincipalRealization {
    /// Raw datum; nothing is checked beyond shapes. Use
    /// [`validate_principal`] for the axioms.
    pub fn new(
        group: FiniteGroup,
        rack: Rack,
        action: Vec<Vec<usize>>,
        g: Vec<usize>,
        chi: Vec<Vec<Q>>,
    ) -> Result<Self> {
        let (n, m) = (rack.len(), group.order());
        let shape_ok = action.len() == m
            && action.iter().all(|row| row.len() == n && row.iter().all(|&y| y < n))
            && g.len() == n
            && g.iter().all(|&h| h < m)
            && chi.len() == n
            && chi.iter().all(|row| row.len() == m && row.iter().all(|c| !c.is_zero()));
        if !shape_ok {
            return Err(Error::Invalid("realization datum has the wrong shape".into()));
        }
        Ok(PrincipalRealization { group, rack, action, g, chi })
    }

    /// `g` given by permutations of `group`, injective; the action is then
    /// conjugation, which must preserve the image of `g`.
    pub fn from_embedding(group: FiniteGroup, rack: Rack, perms: &[Perm], spec: ChiSpec) -> Result<Self> {
        if perms.len() != rack.len() {
            return Err(Error::Invalid("one group element per rack element is required".into()));
        }
        let g = perms
            .iter()
            .map(|p| group.index_of(p).ok_or(Error::SeedNotInGroup))
            .collect::<Result<Vec<_>>>()?;
        let mut pos = vec![usize::MAX; group.order()];
        for (x, &gx) in g.iter().enumerate() {
            if pos[gx] != usize::MAX {
                return Err(Error::Invalid("g is not injective".into()));
            }
            pos[gx] = x;
        }
        let mut action = Vec::with_capacity(group.order());
        for h in 0..group.order() {
            let row = g
                .iter()
                .map(|&gx| match pos[group.conj(h, gx)] {
                    usize::MAX => Err(Error::Invalid("image of g is not conjugation-stable".into())),
                    y => Ok(y),
                })
                .collect::<Result<Vec<_>>>()?;
            action.push(row);
        }
        let chi = match spec {
            ChiSpec::Sgn => {
                let row: Vec<Q> = group.elements().iter().map(|h| q(h.sign())).collect();
                vec![row; rack.len()]
            }
            ChiSpec::MsChi => perms
                .iter()
                .map(|t| {
                    if t.cycles().len() != 1 || t.cycles()[0].len() != 2 {
                        return Err(Error::WrongRackForChi);
                    }
                    Ok(group.elements().iter().map(|h| q(chi(h, t))).collect())
                })
                .collect::<Result<Vec<_>>>()?,
            ChiSpec::Table(t) => t,
        };
        PrincipalRealization::new(group, rack, action, g, chi)
    }

    /// The three S₄ data by name: `o24` with `sgn` or `chi`, `o44` with `sgn`.
    pub fn builtin(rack: &str, chi: &str) -> Result<Self> {
        let r = rack_by_name(rack)?;
        let spec = parse_chi_spec(chi)?;
        PrincipalRealization::from_embedding(FiniteGroup::symmetric(r.degree), r.rack, &r.perms, spec)
    }

    /// The cocycle `q_{ji} = χ_i(g_j)` this datum induces.
    pub fn cocycle(&self) -> Result<Cocycle> {
        let n = self.rack.len();
        let values = (0..n)
            .map(|j| (0..n).map(|i| self.chi[i][self.g[j]].clone()).collect())
            .collect();
        Cocycle::validate(&self.rack, values)
    }

    pub fn len(&self) -> usize {
        self.rack.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rack.is_empty()
    }

    /// `μ_{xy}(b)` for a basis element `b` of the Hopf algebra on `side`,
    /// where `b·v_x = Σ_y μ_{xy}(b) v_y`.
    pub fn mu(&self, side: Side, x: usize, y: usize, b: usize) -> Q {
        match side {
            Side::Pointed => {
                if self.action[b][x] == y {
                    self.chi[x][b].clone()
                } else {
                    Q::zero()
                }
            }
            Side::Copointed => {
                if x == y && b == self.group.inv(self.g[x]) {
                    Q::one()
                } else {
                    Q::zero()
                }
            }
        }
    }

    /// `μ_{xy}` extended linearly to a dense element.
    pub fn mu_on(&self, side: Side, x: usize, y: usize, v: &[Q]) -> Q {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| c * self.mu(side, x, y, b))
            .sum()
    }

    fn hopf(&self, side: Side) -> Hopf<'_> {
        Hopf::new(side.hopf_kind(), &self.group)
    }
}

fn parse_chi_spec(s: &str) -> Result<ChiSpec> {
    match s {
        "sgn" => Ok(ChiSpec::Sgn),
        "ms-chi" | "chi" => Ok(ChiSpec::MsChi),
        _ => Err(Error::Invalid(format!("unknown character family {s:?}; expected sgn or ms-chi"))),
    }
}

/// Realization JSON: a group name, a builtin rack name or rack object, one
/// permutation (cycle notation) per rack element, and the characters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealizationFile {
    pub group: String,
    pub rack: RackRef,
    pub g: Vec<String>,
    pub chi: ChiRef,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RackRef {
    Named(String),
    Table(Rack),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChiRef {
    Named(String),
    Table(Vec<Vec<String>>),
}

impl RealizationFile {
    pub fn realize(&self) -> Result<PrincipalRealization> {
        let group = FiniteGroup::by_name(&self.group)?;
        let degree = group.element(0).degree();
        let rack = match &self.rack {
            RackRef::Named(name) => rack_by_name(name)?.rack,
            RackRef::Table(r) => r.clone(),
        };
        let perms = self
            .g
            .iter()
            .map(|s| Perm::parse_cycles(degree, s))
            .collect::<Result<Vec<_>>>()?;
        let chi = match &self.chi {
            ChiRef::Named(s) => parse_chi_spec(s)?,
            ChiRef::Table(t) => ChiSpec::Table(
                t.iter()
                    .map(|row| row.iter().map(|c| parse_q(c)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        PrincipalRealization::from_embedding(group, rack, &perms, chi)
    }
}

/// Outcome of one exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub name: String,
    pub checked: usize,
    pub pass: bool,
    pub witness: Option<String>,
}

impl AxiomReport {
    fn new(name: &str, checked: usize, witness: Option<String>) -> Self {
        AxiomReport { name: name.into(), checked, pass: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub checks: Vec<AxiomReport>,
    pub all_pass: bool,
}

impl AuditReport {
    fn new(checks: Vec<AxiomReport>) -> Self {
        let all_pass = checks.iter().all(|c| c.pass);
        AuditReport { checks, all_pass }
    }

    pub fn get(&self, name: &str) -> Option<&AxiomReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Checks the datum axioms exhaustively against `q`:
/// `g(h·i) = h g(i) h⁻¹`, `g(i)·j = i ▷ j`, `χ_i(g(j)) = q_{ji}` and
/// `χ_i(ht) = χ_i(t) χ_{t·i}(h)`. Also that `·` is an action.
pub fn validate_principal(r: &PrincipalRealization, q: &Cocycle) -> AuditReport {
    let (n, m) = (r.len(), r.group.order());
    let gr = &r.group;
    let lbl = |x: usize| r.rack.label(x).to_string();
    let el = |h: usize| gr.element(h).to_string();

    let action = (0..m)
        .into_par_iter()
        .find_map_first(|h| {
            (0..m).find_map(|t| {
                (0..n).find_map(|x| {
                    (r.action[h][r.action[t][x]] != r.action[gr.mul(h, t)][x])
                        .then(|| format!("h={}, t={}, x={}", el(h), el(t), lbl(x)))
                })
            })
        })
        .or_else(|| (0..n).find(|&x| r.action[gr.identity()][x] != x).map(|x| format!("e·{} ≠ {}", lbl(x), lbl(x))));

    let equivariant = (0..m).find_map(|h| {
        (0..n).find_map(|i| {
            (r.g[r.action[h][i]] != gr.conj(h, r.g[i])).then(|| format!("h={}, i={}", el(h), lbl(i)))
        })
    });

    let inner = (0..n).find_map(|i| {
        (0..n).find_map(|j| {
            (r.action[r.g[i]][j] != r.rack.op(i, j)).then(|| format!("i={}, j={}", lbl(i), lbl(j)))
        })
    });

    let character = if q.len() != n {
        Some("cocycle has the wrong size".into())
    } else {
        (0..n).find_map(|i| {
            (0..n).find_map(|j| {
                (r.chi[i][r.g[j]] != *q.get(j, i)).then(|| {
                    format!(
                        "χ_{}(g_{}) = {} but q = {}",
                        lbl(i),
                        lbl(j),
                        fmt_q(&r.chi[i][r.g[j]]),
                        fmt_q(q.get(j, i))
                    )
                })
            })
        })
    };

    let cocycle = (0..m).into_par_iter().find_map_first(|h| {
        (0..m).find_map(|t| {
            (0..n).find_map(|i| {
                let lhs = &r.chi[i][gr.mul(h, t)];
                let rhs = &r.chi[i][t] * &r.chi[r.action[t][i]][h];
                (*lhs != rhs).then(|| format!("h={}, t={}, i={}", el(h), el(t), lbl(i)))
            })
        })
    });

    AuditReport::new(vec![
        AxiomReport::new("action", m * m * n, action),
        AxiomReport::new("equivariance", m * n, equivariant),
        AxiomReport::new("inner", n * n, inner),
        AxiomReport::new("character", n * n, character),
        AxiomReport::new("one_cocycle", m * m * n, cocycle),
    ])
}

/// The comatrix `e_{xy}` with `λ(v_x) = Σ_y e_{xy} ⊗ v_y`, as dense vectors
/// on the basis of `kG` (pointed) or the δ-basis of `k^G` (copointed).
pub fn comatrix_elements(r: &PrincipalRealization, side: Side) -> Vec<Vec<Vec<Q>>> {
    let (n, m) = (r.len(), r.group.order());
    let mut e = vec![vec![vec![Q::zero(); m]; n]; n];
    for x in 0..n {
        match side {
            Side::Pointed => e[x][x][r.g[x]] = Q::one(),
            Side::Copointed => {
                for t in 0..m {
                    let ti = r.group.inv(t);
                    e[x][r.action[ti][x]][t] = r.chi[x][ti].clone();
                }
            }
        }
    }
    e
}

/// Exhaustive audit of the comatrix elements against the action:
///
/// * `μ_{xy}(S^n(e_{zt}))` for `n = 0, 1`. Both Hopf algebras have
///   `S² = id`, so higher powers repeat these.
///   Pointed: `δ_{zt} δ_{y,z▷x} q_{zx}` and `δ_{zt} δ_{x,z▷y} q_{zy}⁻¹`.
///   Copointed: `δ_{xy} δ_{t,x▷z} q_{xz}` and `δ_{xy} δ_{z,x▷t} q_{xt}⁻¹`.
/// * the comatrix relations, pointed
///   `q_{ty} e_{st} e_{xy} = q_{sx} e_{s▷x,t▷y} e_{st}`, copointed
///   `q_{yt} e_{st} e_{xy} = q_{xs} e_{xy} e_{x▷s,y▷t}`;
/// * the coalgebra law `Δe_{xz} = Σ_y e_{xy} ⊗ e_{yz}`, `ε(e_{xy}) = δ_{xy}`;
/// * YD compatibility `Σ_y μ_{xy}(h₁) e_{yz} h₂ = Σ_y μ_{yz}(h₂) h₁ e_{xy}`
///   on every basis element `h`.
///
/// `q` is the cocycle the formulas are checked against, so pairing a datum
/// with the wrong cocycle shows up as failures.
pub fn comatrix_action_audit(r: &PrincipalRealization, q: &Cocycle, side: Side) -> AuditReport {
    let n = r.len();
    let hopf = r.hopf(side);
    let e = comatrix_elements(r, side);
    let rk = &r.rack;
    let lbl = |x: usize| rk.label(x).to_string();
    let tuples: Vec<(usize, usize, usize, usize)> = (0..n)
        .flat_map(|a| (0..n).flat_map(move |b| (0..n).flat_map(move |c| (0..n).map(move |d| (a, b, c, d)))))
        .collect();
    let delta = |c: bool| if c { Q::one() } else { Q::zero() };

    let eval = |power: usize| {
        tuples.par_iter().find_map_first(|&(x, y, z, t)| {
            let s = if power == 0 { e[z][t].clone() } else { hopf.antipode(&e[z][t]) };
            let got = r.mu_on(side, x, y, &s);
            let want = match (side, power) {
                (Side::Pointed, 0) => delta(z == t && y == rk.op(z, x)) * q.get(z, x),
                (Side::Pointed, _) => delta(z == t && x == rk.op(z, y)) * q.get(z, y).recip(),
                (Side::Copointed, 0) => delta(x == y && t == rk.op(x, z)) * q.get(x, z),
                (Side::Copointed, _) => delta(x == y && z == rk.op(x, t)) * q.get(x, t).recip(),
            };
            (got != want).then(|| format!("x={}, y={}, z={}, t={}: {} ≠ {}", lbl(x), lbl(y), lbl(z), lbl(t), fmt_q(&got), fmt_q(&want)))
        })
    };
    let scale = |c: &Q, v: &[Q]| v.iter().map(|a| c * a).collect::<Vec<Q>>();

    let relation = tuples.par_iter().find_map_first(|&(s, t, x, y)| {
        let (lhs, rhs) = match side {
            Side::Pointed => (
                scale(q.get(t, y), &hopf.mul(&e[s][t], &e[x][y])),
                scale(q.get(s, x), &hopf.mul(&e[rk.op(s, x)][rk.op(t, y)], &e[s][t])),
            ),
            Side::Copointed => (
                scale(q.get(y, t), &hopf.mul(&e[s][t], &e[x][y])),
                scale(q.get(x, s), &hopf.mul(&e[x][y], &e[rk.op(x, s)][rk.op(y, t)])),
            ),
        };
        (lhs != rhs).then(|| format!("s={}, t={}, x={}, y={}", lbl(s), lbl(t), lbl(x), lbl(y)))
    });

    let coalgebra = (0..n).find_map(|x| {
        (0..n).find_map(|z| {
            let lhs = hopf.coproduct(&e[x][z]);
            let mut rhs = vec![hopf.zero(); hopf.dim()];
            for y in 0..n {
                for (a, ea) in e[x][y].iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    for (b, eb) in e[y][z].iter().enumerate() {
                        rhs[a][b] += ea * eb;
                    }
                }
            }
            if lhs != rhs {
                return Some(format!("Δe at x={}, z={}", lbl(x), lbl(z)));
            }
            let eps = hopf.counit(&e[x][z]);
            (eps != delta(x == z)).then(|| format!("ε(e) at x={}, z={}", lbl(x), lbl(z)))
        })
    });

    let yd = (0..hopf.dim()).into_par_iter().find_map_first(|h| {
        let pieces = hopf.coproduct_basis(h);
        (0..n).find_map(|x| {
            (0..n).find_map(|z| {
                let mut lhs = hopf.zero();
                let mut rhs = hopf.zero();
                for &(h1, h2) in &pieces {
                    for y in 0..n {
                        let a = r.mu(side, x, y, h1);
                        if !a.is_zero() {
                            let p = hopf.mul(&e[y][z], &hopf.basis(h2));
                            for (k, c) in p.iter().enumerate() {
                                lhs[k] += &a * c;
                            }
                        }
                        let b = r.mu(side, y, z, h2);
                        if !b.is_zero() {
                            let p = hopf.mul(&hopf.basis(h1), &e[x][y]);
                            for (k, c) in p.iter().enumerate() {
                                rhs[k] += &b * c;
                            }
                        }
                    }
                }
                (lhs != rhs).then(|| format!("h={}, x={}, z={}", r.group.element(h), lbl(x), lbl(z)))
            })
        })
    });

    let n4 = n.pow(4);
    AuditReport::new(vec![
        AxiomReport::new("action_on_comatrix", n4, eval(0)),
        AxiomReport::new("action_on_antipode", n4, eval(1)),
        AxiomReport::new("comatrix_relation", n4, relation),
        AxiomReport::new("coalgebra", n * n, coalgebra),
        AxiomReport::new("yetter_drinfeld", hopf.dim() * n * n, yd),
    ])
}

/// The braiding `c(u_x ⊗ u_y) = Σ_z e_{xz}·u_y ⊗ u_z` of the realized
/// module, as a monomial table.
pub fn realized_braiding(r: &PrincipalRealization, side: Side) -> Result<BraidedSpace> {
    let n = r.len();
    let e = comatrix_elements(r, side);
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mut hit = None;
            for z in 0..n {
                for u in 0..n {
                    let c = r.mu_on(side, y, u, &e[x][z]);
                    if !c.is_zero() {
                        if hit.is_some() {
                            return Err(Error::Invalid("realized braiding is not monomial".into()));
                        }
                        hit = Some(((u, z), c));
                    }
                }
            }
            table.push(hit.ok_or_else(|| Error::Invalid("realized braiding is singular".into()))?);
        }
    }
    BraidedSpace::from_table(n, table)
}

/// The braiding computed through the copointed realization agrees exactly
/// with the `W` braiding of `(X, q)`, and the pointed one with `V`.
pub fn dual_braiding_check(r: &PrincipalRealization) -> bool {
    let Ok(q) = r.cocycle() else { return false };
    let n = r.len();
    [(Side::Copointed, Flavor::W), (Side::Pointed, Flavor::V)].iter().all(|&(side, flavor)| {
        let Ok(got) = realized_braiding(r, side) else { return false };
        let want = BraidedSpace::from_rack(&r.rack, &q, flavor);
        (0..n).all(|x| (0..n).all(|y| got.braid(x, y) == want.braid(x, y)))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    /// `θ_z` is evaluation at this group element
    pub evaluation_at: Vec<String>,
    pub relation_holds: bool,
    pub relation_witness: Option<(String, String)>,
    pub distinct: bool,
    pub faithful: bool,
}

/// `θ_z = μ_{zz}`, an algebra map `k^G → k`.
pub fn theta_characters(r: &PrincipalRealization) -> (Vec<GroupFunction>, ThetaReport) {
    let (n, m) = (r.len(), r.group.order());
    let thetas: Vec<GroupFunction> = (0..n)
        .map(|z| GroupFunction((0..m).map(|t| r.mu(Side::Copointed, z, z, t)).collect()))
        .collect();
    let point = |f: &GroupFunction| (0..m).find(|&t| !f.at(t).is_zero());
    // convolution of functionals on k^G: (φψ)(δ_r) = Σ_{ab=r} φ(δ_a) ψ(δ_b)
    let convolve = |a: &GroupFunction, b: &GroupFunction| {
        let mut out = vec![Q::zero(); m];
        for (u, cu) in a.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (v, cv) in b.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                out[r.group.mul(u, v)] += cu * cv;
            }
        }
        out
    };
    let relation_witness = (0..n).find_map(|z| {
        (0..n).find_map(|t| {
            let lhs = convolve(&thetas[z], &thetas[t]);
            let rhs = convolve(&thetas[t], &thetas[r.rack.op(t, z)]);
            (lhs != rhs).then(|| (r.rack.label(z).to_string(), r.rack.label(t).to_string()))
        })
    });
    let mut sorted = thetas.clone();
    sorted.sort_by(|a, b| a.0.cmp(&b.0));
    sorted.dedup();
    let report = ThetaReport {
        evaluation_at: thetas
            .iter()
            .map(|f| point(f).map_or("none".into(), |t| r.group.element(t).to_string()))
            .collect(),
        relation_holds: relation_witness.is_none(),
        relation_witness,
        distinct: sorted.len() == n,
        faithful: r.rack.is_faithful(),
    };
    (thetas, report)
}
