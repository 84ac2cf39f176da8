//! Exact values go out as `{order, coefficients}` alongside a float rendering
//! rounded to the requested number of digits.

use serde_json::{json, Map, Value};
use spintft_core::classify::AscsTriple;
use spintft_core::metric::{FiniteAbelianGroup, GroupElement, QuadraticForm};
use spintft_core::scalar::{format_rational, Cyclotomic, QmodZ};
use spintft_core::spin::PointedSpinModular;

#[derive(Clone, Copy, Debug)]
pub struct Render {
    pub precision: usize,
}

impl Render {
    pub fn float(&self, x: f64) -> Value {
        let s = format!("{:.*}", self.precision, x);
        let y: f64 = s.parse().unwrap_or(x);
        // no negative zeros in the output
        json!(if y == 0.0 { 0.0 } else { y })
    }

    pub fn cyclotomic(&self, c: &Cyclotomic) -> Value {
        let z = c.to_complex(self.precision as u32);
        json!({
            "order": c.order(),
            "coefficients": c.coefficients().iter().map(format_rational).collect::<Vec<_>>(),
            "expression": c.to_expression(),
            "float": {"re": self.float(z.re), "im": self.float(z.im)},
        })
    }

    pub fn matrix(&self, m: &[Vec<Cyclotomic>]) -> Value {
        Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|c| self.cyclotomic(c)).collect())).collect())
    }
}

pub fn qmodz(v: &QmodZ) -> Value {
    json!(v.to_string())
}

pub fn element(x: &GroupElement) -> Value {
    json!(x.to_string())
}

pub fn group(g: &FiniteAbelianGroup) -> Value {
    json!({"orders": g.orders(), "invariant_factors": g.canonical_orders(), "size": g.size()})
}

/// The value table in the metric-group input schema, so outputs can be fed
/// back in.
pub fn form_table(q: &QuadraticForm) -> Value {
    let mut table = Map::new();
    for (x, v) in q.entries() {
        table.insert(x.to_string(), qmodz(&v));
    }
    json!({"table": table})
}

pub fn metric_group(q: &QuadraticForm) -> Value {
    json!({"orders": q.group().orders(), "q": form_table(q)})
}

pub fn pointed(p: &PointedSpinModular) -> Value {
    let mut v = metric_group(p.form());
    v["fermion"] = json!(p.fermion().residues());
    v
}

pub fn ascs(a: &AscsTriple) -> Value {
    json!({
        "group": group(a.group()),
        "orders": a.group().orders(),
        "q": form_table(a.form()),
        "sigma": a.sigma(),
        "takes_no_zero_value": a.is_spin(),
    })
}
