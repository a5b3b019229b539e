//! Browser bindings for the demo page in `www/`.
//!
//! Each export is a thin wrapper over a plain function, so the logic also
//! runs (and is tested) natively.

use perron_core::exact::{expected_real_roots, format_decimal, volume};
use perron_core::sampler::{sample_omega, sample_perron, SamplerConfig, SamplerMethod};
use perron_core::VolumeClass;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest degree the page may request; sampling cost grows like N².
pub const MAX_DEGREE: usize = 128;
pub const MAX_ROOTS: usize = 200_000;

/// Roots of `count` exact draws from `space` (`"omega"` or `"perron"`),
/// flattened as `[re_0, im_0, re_1, im_1, ...]`.
pub fn sample_roots_flat(space: &str, degree: usize, count: usize, seed: u64) -> Result<Vec<f64>, String> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(format!("degree must be between 1 and {MAX_DEGREE}"));
    }
    if count == 0 || count.saturating_mul(degree) > MAX_ROOTS {
        return Err(format!("count · degree must be between 1 and {MAX_ROOTS}"));
    }
    let batch = match space {
        "omega" => sample_omega(degree, count, &SamplerConfig::new(seed, SamplerMethod::FamExact)),
        "perron" => sample_perron(degree, count, &SamplerConfig::new(seed, SamplerMethod::PerronExact)),
        other => return Err(format!("unknown space {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    Ok(batch.samples.iter().flat_map(|s| s.roots.roots.iter().flat_map(|z| [z.re, z.im])).collect())
}

/// JSON rows `{N, all, perron, totally_real, totally_complex}`, each an
/// `{exact, decimal}` pair; odd degrees have no totally complex entry (`null`).
pub fn volume_table_json(max_degree: usize) -> Result<String, String> {
    if max_degree == 0 || max_degree > 60 {
        return Err("max degree must be between 1 and 60".into());
    }
    let mut rows = Vec::new();
    for n in 1..=max_degree as u64 {
        let mut row = json!({ "N": n });
        for class in VolumeClass::ALL {
            if class == VolumeClass::TotallyComplex && n % 2 == 1 {
                row[class.name()] = serde_json::Value::Null;
                continue;
            }
            let v = volume(class, n).map_err(|e| e.to_string())?;
            row[class.name()] = json!({ "exact": v.to_string(), "decimal": format_decimal(&v, 6) });
        }
        rows.push(row);
    }
    Ok(serde_json::Value::Array(rows).to_string())
}

/// `{N, exact, decimal, conjectural}` for the expected number of real roots.
pub fn real_roots_json(degree: u64) -> String {
    let r = expected_real_roots(degree);
    json!({
        "N": degree,
        "exact": r.to_string(),
        "decimal": format_decimal(&r, 15),
        "conjectural": true,
    })
    .to_string()
}

#[wasm_bindgen]
pub fn sample_roots(space: &str, degree: usize, count: usize, seed: u32) -> Result<Vec<f64>, JsError> {
    sample_roots_flat(space, degree, count, u64::from(seed)).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn volume_table(max_degree: usize) -> Result<String, JsError> {
    volume_table_json(max_degree).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn real_roots(degree: u32) -> String {
    real_roots_json(u64::from(degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_roots_lie_in_the_disk() {
        let xs = sample_roots_flat("perron", 9, 30, 4).unwrap();
        assert_eq!(xs.len(), 2 * 9 * 30);
        assert!(xs.chunks(2).all(|z| z[0].hypot(z[1]) <= 1.0 + 1e-9));
        assert_eq!(xs, sample_roots_flat("perron", 9, 30, 4).unwrap());
        assert!(sample_roots_flat("mixed", 4, 3, 1).is_err());
        assert!(sample_roots_flat("omega", 0, 3, 1).is_err());
    }

    #[test]
    fn volume_table_starts_with_known_values() {
        let v: serde_json::Value = serde_json::from_str(&volume_table_json(3).unwrap()).unwrap();
        assert_eq!(v[0]["all"]["exact"], "2");
        assert_eq!(v[1]["all"]["exact"], "4");
        assert_eq!(v[1]["totally_complex"]["exact"], "8/3");
        assert_eq!(v[2]["all"]["exact"], "16/3");
        assert!(v[2]["totally_complex"].is_null());
        assert!(volume_table_json(0).is_err());
    }

    #[test]
    fn real_roots_are_flagged() {
        let v: serde_json::Value = serde_json::from_str(&real_roots_json(2)).unwrap();
        assert_eq!(v["exact"], "2/3");
        assert_eq!(v["conjectural"], true);
    }
}
