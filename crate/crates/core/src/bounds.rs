//! Closed-form evaluation of the bounds on `r(K_s, G)` and relatives.
//!
//! Every formula is asymptotic with an unspecified constant. Reports set
//! that constant to 1 unless overridden and say so in `constant_caveat`.
//! Logarithms are natural.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::density::{rho_star, Rational};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Lower,
    Upper,
    Equality,
}

fn rational_str<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: &'static str,
    pub role: Role,
    /// True when the statement only holds up to constants / for large `m`.
    pub asymptotic: bool,
    /// Lower and upper reports on the same quantity share a pair tag.
    pub pair: Option<&'static str>,
    pub inputs: BTreeMap<&'static str, f64>,
    /// Exact exponent of the leading power, where there is one.
    #[serde(serialize_with = "rational_str")]
    pub exponent: Option<Rational>,
    pub value: f64,
    pub constant_caveat: String,
}

/// Optional inputs for [`evaluate_all`].
#[derive(Debug, Clone, Default)]
pub struct BoundInputs {
    /// Size `t` of `H` for the `m^{c sqrt t}` estimate.
    pub t: Option<usize>,
    /// Fixed graph `H` for the `rho*` lower bound.
    pub h: Option<Graph>,
    /// `(p, q, k)` for the complete bipartite estimates.
    pub pqk: Option<(usize, usize, usize)>,
    /// Chromatic number used in the `m^{c sqrt t}` constant; defaults to 2.
    pub chromatic: Option<usize>,
    /// Per-report constant overrides, keyed by report name.
    pub constants: BTreeMap<String, f64>,
}

const DEFAULT_CAVEAT: &str =
    "asymptotic; unspecified constant set to 1, value is an order of magnitude, not a finite-m bound";

struct Builder<'a> {
    out: Vec<BoundReport>,
    constants: &'a BTreeMap<String, f64>,
}

impl Builder<'_> {
    fn constant(&self, name: &str) -> f64 {
        self.constants.get(name).copied().unwrap_or(1.0)
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        name: &'static str,
        role: Role,
        pair: Option<&'static str>,
        inputs: &[(&'static str, f64)],
        exponent: Option<Rational>,
        unscaled: f64,
        caveat: Option<String>,
    ) -> Result<()> {
        let c = self.constant(name);
        let value = c * unscaled;
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::domain(format!("{name} evaluates to {value}")));
        }
        let mut inputs: BTreeMap<_, _> = inputs.iter().copied().collect();
        inputs.insert("c", c);
        let constant_caveat = caveat.unwrap_or_else(|| {
            if c == 1.0 {
                DEFAULT_CAVEAT.to_string()
            } else {
                format!("asymptotic; unspecified constant overridden to {c}")
            }
        });
        self.out.push(BoundReport {
            name,
            role,
            asymptotic: true,
            pair,
            inputs,
            exponent,
            value,
            constant_caveat,
        });
        Ok(())
    }
}

/// Exponent `rho* / (1 + rho*)` of the lower bound for `r(H, G)`.
pub fn thm3_exponent(h: &Graph) -> Result<Rational> {
    let r = rho_star(h)?;
    Ok(r / (Rational::from_integer(1) + r))
}

/// Evaluates every applicable bound at `(s, m)`.
pub fn evaluate_all(s: usize, m: usize, extra: &BoundInputs) -> Result<Vec<BoundReport>> {
    if s < 3 {
        return Err(Error::domain(format!("s must be >= 3, got {s}")));
    }
    let mf = m as f64;
    if mf <= std::f64::consts::E {
        return Err(Error::domain(format!(
            "m must exceed e (ln m > 1), got {m}"
        )));
    }
    let sf = s as f64;
    let si = s as i64;
    let log = mf.ln();
    let base = [("s", sf), ("m", mf)];
    let mut b = Builder {
        out: Vec::new(),
        constants: &extra.constants,
    };

    b.push(
        "efrs_lower",
        Role::Lower,
        Some("efrs_min"),
        &base,
        Some(Rational::new(si, si + 2)),
        mf.powf(sf / (sf + 2.0)),
        None,
    )?;
    b.push(
        "efrs_upper",
        Role::Upper,
        Some("efrs_min"),
        &base,
        Some(Rational::new(si - 1, si)),
        mf.powf((sf - 1.0) / sf),
        None,
    )?;
    b.push(
        "thm1_lower",
        Role::Lower,
        Some("min_ramsey"),
        &base,
        Some(Rational::new(si + 1, si + 3)),
        (mf / log).powf((sf + 1.0) / (sf + 3.0)),
        None,
    )?;
    b.push(
        "thm1_upper",
        Role::Upper,
        Some("min_ramsey"),
        &base,
        Some(Rational::new(si - 1, si)),
        mf.powf((sf - 1.0) / sf) / log.powf((sf - 2.0) / sf),
        None,
    )?;
    if s == 3 {
        let exact = Some("exact for every G with m edges and no isolated vertices".to_string());
        b.push(
            "sidorenko_upper",
            Role::Upper,
            None,
            &[("m", mf)],
            None,
            2.0 * mf + 1.0,
            exact,
        )?;
        b.push(
            "tree_equality",
            Role::Equality,
            None,
            &[("m", mf)],
            None,
            2.0 * mf + 1.0,
            Some("exact for every tree with m edges".to_string()),
        )?;
        // Both are finite statements.
        let n = b.out.len();
        for r in &mut b.out[n - 2..] {
            r.asymptotic = false;
            r.inputs.remove("c");
        }
    }
    b.push(
        "thm2_upper",
        Role::Upper,
        Some("max_ramsey"),
        &base,
        Some(Rational::new(si - 1, 2)),
        mf.powf((sf - 1.0) / 2.0) / log.powf((sf - 3.0) / 2.0),
        None,
    )?;
    b.push(
        "clique_g_upper",
        Role::Upper,
        None,
        &base,
        Some(Rational::new(si - 1, 2)),
        mf.powf((sf - 1.0) / 2.0) / log.powf(sf - 2.0),
        None,
    )?;
    b.push(
        "efrs_diagonal",
        Role::Equality,
        None,
        &[("m", mf)],
        Some(Rational::from_integer(1)),
        mf / log,
        Some("asymptotic order Theta(m / ln m) of min r(G) over graphs with m edges; constants set to 1".to_string()),
    )?;

    if let Some(h) = &extra.h {
        let rho = rho_star(h)?;
        let exp = thm3_exponent(h)?;
        let e = *exp.numer() as f64 / *exp.denom() as f64;
        let rho_f = *rho.numer() as f64 / *rho.denom() as f64;
        if rho_f <= 0.0 {
            return Err(Error::domain(
                "rho*(H) must be positive for the rho* lower bound",
            ));
        }
        b.push(
            "thm3_lower",
            Role::Lower,
            None,
            &[
                ("m", mf),
                ("rho_star", rho_f),
                ("v_h", h.n() as f64),
                ("e_h", h.edge_count() as f64),
            ],
            Some(exp),
            (mf / log).powf(e),
            None,
        )?;
    }

    if let Some((p, q, k)) = extra.pqk {
        if p < 1 || q < 1 || k < 2 {
            return Err(Error::domain("K_{p,q} estimates need p, q >= 1 and k >= 2"));
        }
        let (pf, kf) = (p as f64, k as f64);
        let pi = p as i64;
        let kpq = Graph::complete_bipartite(p, q);
        if kpq.n() >= 3 {
            let rho = rho_star(&kpq)?;
            let exp = rho / (Rational::from_integer(1) + rho);
            let e = *exp.numer() as f64 / *exp.denom() as f64;
            let rho_f = *rho.numer() as f64 / *rho.denom() as f64;
            if rho_f > 0.0 {
                b.push(
                    "kpq_lower",
                    Role::Lower,
                    Some("kpq"),
                    &[("m", mf), ("p", pf), ("q", q as f64), ("rho_star", rho_f)],
                    Some(exp),
                    (mf / log).powf(e),
                    None,
                )?;
            }
        }
        b.push(
            "kpq_union_upper",
            Role::Upper,
            Some("kpq"),
            &[("m", mf), ("p", pf)],
            Some(Rational::new(pi, pi + 1)),
            mf.powf(pf / (pf + 1.0)),
            None,
        )?;
        b.push(
            "kpq_clique_upper",
            Role::Upper,
            None,
            &[("p", pf), ("k", kf)],
            Some(Rational::from_integer(pi)),
            kf.powf(pf),
            None,
        )?;
        b.push(
            "aks_offdiag_upper",
            Role::Upper,
            None,
            &[("s", sf), ("k", kf)],
            Some(Rational::from_integer(si - 1)),
            kf.powf(sf - 1.0) / kf.ln().powf(sf - 2.0),
            None,
        )?;
    }

    if let Some(t) = extra.t {
        if t < 1 {
            return Err(Error::domain("t must be >= 1"));
        }
        let ell = extra.chromatic.unwrap_or(2);
        if ell < 2 {
            return Err(Error::domain("chromatic number must be >= 2"));
        }
        let tf = t as f64;
        // r(H, G) <= m^{2 l sqrt t} from the inductive sketch, so c = 2l.
        let c = 2.0 * ell as f64;
        let caveat = if extra.chromatic.is_some() {
            format!("exponent constant c = 2l with chromatic number l = {ell}; valid for large m")
        } else {
            "exponent constant c = 2l with chromatic number l defaulted to 2 (H's chromatic number unknown); valid for large m".to_string()
        };
        b.push(
            "prop_upper",
            Role::Upper,
            None,
            &[
                ("m", mf),
                ("t", tf),
                ("chromatic", ell as f64),
                ("exponent_c", c),
            ],
            None,
            mf.powf(c * tf.sqrt()),
            Some(caveat),
        )?;
    }

    Ok(b.out)
}
