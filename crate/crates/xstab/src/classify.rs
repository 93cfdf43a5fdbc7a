//! Regime classification for a forbidden graph h against a class count k:
//! which chromatic-critical structure h has, and which stability bound
//! regime it lands in. Membership in blow-ups of the Mycielskian of K_k is
//! decided by capacity-constrained homomorphism into the (2k+1)-vertex
//! Mycielskian itself: a homomorphism with fiber sizes (t, b, a) on the
//! original / shadow / apex vertices is exactly an embedding of h into the
//! blow-up with those class sizes.

use serde::Serialize;

use crate::constructions::mycielskian;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::search::{chromatic_number, hom_with_capacities, is_k_colorable};

/// The three bound regimes, keyed by how h maps into blow-ups of the
/// Mycielskian of K_k (fibers capped at |V(h)| throughout).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// No homomorphism at all: h embeds in no blow-up.
    #[serde(rename = "NOT_IN_AAA")]
    NotInAaa,
    /// A homomorphism with apex fiber <= 1 exists.
    #[serde(rename = "IN_AA1")]
    InAa1,
    /// Homomorphisms exist, but every one has apex fiber >= 2.
    #[serde(rename = "IN_AAA_ONLY")]
    InAaaOnly,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Regime::NotInAaa => "NOT_IN_AAA",
            Regime::InAa1 => "IN_AA1",
            Regime::InAaaOnly => "IN_AAA_ONLY",
        };
        f.write_str(s)
    }
}

/// Full classification record for (h, k).
#[derive(Debug, Clone, Serialize)]
pub struct RegimeClassification {
    pub chi: usize,
    pub critical_edges: Vec<(usize, usize)>,
    pub regime: Regime,
    /// Smallest shadow-fiber cap b admitting a homomorphism (original and
    /// apex fibers capped at |V(h)|). Present iff some homomorphism exists.
    pub minimal_b: Option<usize>,
    /// Fiber sizes actually used by the minimal-b homomorphism: the largest
    /// original fiber and the apex fiber. Witness only — not minimized.
    pub witness_t: Option<usize>,
    pub witness_a: Option<usize>,
}

/// Exact rational exponent, serialized as num/den.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Exponent {
    pub num: i64,
    pub den: i64,
}

impl Exponent {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den > 0, "exponent denominators are positive");
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
        Exponent { num: num / g, den: den / g }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// An asymptotic bound of the form f(n)^{f_exp} * n^{n_exp}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExponentPair {
    pub f_exp: Exponent,
    pub n_exp: Exponent,
}

impl std::fmt::Display for ExponentPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "f^({}) * n^({})", self.f_exp, self.n_exp)
    }
}

/// The deletion-count bounds selected by the regime: tightest known upper
/// exponents, the matching lower-bound construction's exponents, and
/// whether they agree up to constants.
#[derive(Debug, Clone, Serialize)]
pub struct BoundDescriptor {
    pub regime: Regime,
    pub minimal_b: Option<usize>,
    pub upper: ExponentPair,
    pub lower: ExponentPair,
    pub tight: bool,
}

/// Edges whose removal drops the chromatic number (necessarily by exactly
/// one). Ascending (u, v) order.
pub fn find_critical_edges(h: &Graph) -> Result<Vec<(usize, usize)>> {
    if h.edge_count() == 0 {
        return Err(Error::InvalidParameter(
            "critical-edge search needs at least one edge".into(),
        ));
    }
    let chi = chromatic_number(h);
    debug_assert!(chi >= 2);
    let mut out = Vec::new();
    for (u, v) in h.edges() {
        let mut g = h.clone();
        g.remove_edge(u, v);
        if is_k_colorable(&g, chi - 1) {
            out.push((u, v));
        }
    }
    Ok(out)
}

fn precondition_report(h: &Graph, k: usize) -> Result<(usize, Vec<(usize, usize)>)> {
    if k == 0 {
        return Err(Error::InvalidParameter("classification needs k >= 1".into()));
    }
    let chi = chromatic_number(h);
    if chi != k + 1 {
        return Err(Error::Precondition(format!(
            "chromatic number is {chi}, but classification for k = {k} needs exactly {}",
            k + 1
        )));
    }
    let critical = find_critical_edges(h)?;
    if critical.is_empty() {
        return Err(Error::Precondition(
            "graph has no critical edge (no single removal lowers the chromatic number)".into(),
        ));
    }
    Ok((chi, critical))
}

/// Classify (h, k). Requires chi(h) = k + 1 and a critical edge.
pub fn regime_of(h: &Graph, k: usize) -> Result<RegimeClassification> {
    let (chi, critical_edges) = precondition_report(h, k)?;
    let target = mycielskian(&Graph::complete(k));
    let nt = target.vertex_count(); // 2k + 1; apex is vertex 2k
    let nh = h.vertex_count();
    let apex = 2 * k;

    let caps_all = vec![nh; nt];
    let hom_all = hom_with_capacities(h, &target, &caps_all);

    let (regime, minimal_b, witness) = match hom_all {
        None => (Regime::NotInAaa, None, None),
        Some(_) => {
            let mut caps_apex1 = caps_all.clone();
            caps_apex1[apex] = 1;
            let apex1 = hom_with_capacities(h, &target, &caps_apex1);
            let regime = if apex1.is_some() { Regime::InAa1 } else { Regime::InAaaOnly };

            // ascending search for the smallest shadow cap; b = nh always
            // succeeds because the unconstrained homomorphism exists
            let mut found = None;
            for b in 1..=nh {
                let mut caps = caps_all.clone();
                for w in k..2 * k {
                    caps[w] = b;
                }
                if let Some(hom) = hom_with_capacities(h, &target, &caps) {
                    found = Some((b, hom));
                    break;
                }
            }
            let (b, hom) = found.expect("cap |V(h)| must admit the unconstrained homomorphism");
            let mut fibers = vec![0usize; nt];
            for &img in &hom {
                fibers[img] += 1;
            }
            let t = (0..k).map(|v| fibers[v]).max().unwrap_or(0);
            let a = fibers[apex];
            (regime, Some(b), Some((t, a)))
        }
    };

    Ok(RegimeClassification {
        chi,
        critical_edges,
        regime,
        minimal_b,
        witness_t: witness.map(|(t, _)| t),
        witness_a: witness.map(|(_, a)| a),
    })
}

/// The bound exponents selected by the regime of (h, k):
/// no blow-up membership gives the tight f^{3/2}/n pair; apex-fiber-1
/// membership gives the tight f^2/n^2 pair; anything in between keeps the
/// general f^{1-1/(bk)} n^{1/(bk)} upper bound against the f^2/n^2 lower
/// bound, with the gap reported as tight = false.
pub fn applicable_theorem(h: &Graph, k: usize) -> Result<BoundDescriptor> {
    let class = regime_of(h, k)?;
    let pair = |fn_: (i64, i64), nn: (i64, i64)| ExponentPair {
        f_exp: Exponent::new(fn_.0, fn_.1),
        n_exp: Exponent::new(nn.0, nn.1),
    };
    let descriptor = match class.regime {
        Regime::NotInAaa => BoundDescriptor {
            regime: class.regime,
            minimal_b: None,
            upper: pair((3, 2), (-1, 1)),
            lower: pair((3, 2), (-1, 1)),
            tight: true,
        },
        Regime::InAa1 => BoundDescriptor {
            regime: class.regime,
            minimal_b: class.minimal_b,
            upper: pair((2, 1), (-2, 1)),
            lower: pair((2, 1), (-2, 1)),
            tight: true,
        },
        Regime::InAaaOnly => {
            let b = class.minimal_b.expect("homomorphism exists in this regime") as i64;
            let bk = b * k as i64;
            BoundDescriptor {
                regime: class.regime,
                minimal_b: class.minimal_b,
                upper: pair((bk - 1, bk), (1, bk)),
                lower: pair((2, 1), (-2, 1)),
                tight: false,
            }
        }
    };
    Ok(descriptor)
}
