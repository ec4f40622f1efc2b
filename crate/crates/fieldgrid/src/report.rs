//! Structured verification reports and their byte-stable JSON rendering.
//!
//! The JSON is written by hand rather than through a serializer so that
//! every number carries exactly 17 significant digits and the key order is
//! fixed; two runs of the same scenario produce identical bytes.

use std::collections::BTreeMap;

use hgbeam::kgmodes::Convention;

use crate::config::RunConfig;

/// One real number with 17 significant digits, round-trip safe for f64.
pub fn fmt_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        // non-finite values have no JSON literal; null keeps the document valid
        "null".to_string()
    }
}

/// Outcome of one verification scenario.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub scenario: String,
    pub metrics: BTreeMap<String, f64>,
    pub verdict: bool,
    echo: ConfigEcho,
}

#[derive(Debug, Clone)]
struct ConfigEcho {
    beta: f64,
    epsilon: f64,
    mode: (u32, u32),
    convention: &'static str,
    seed: u64,
}

impl VerifyReport {
    pub fn new(scenario: &str, config: &RunConfig, seed: u64) -> Self {
        VerifyReport {
            scenario: scenario.to_string(),
            metrics: BTreeMap::new(),
            verdict: true,
            echo: ConfigEcho {
                beta: config.beam.beta,
                epsilon: config.beam.epsilon,
                mode: (config.mode.m(), config.mode.n()),
                convention: match config.convention {
                    Convention::Canonical => "canonical",
                    Convention::AsPrinted => "as_printed",
                },
                seed,
            },
        }
    }

    pub fn metric(&mut self, name: &str, value: f64) {
        self.metrics.insert(name.to_string(), value);
    }

    /// Record a metric and fold `value <= bound` into the verdict.
    /// A NaN value fails the check.
    pub fn check_le(&mut self, name: &str, value: f64, bound: f64) {
        self.metric(name, value);
        self.verdict = self.verdict && value <= bound;
    }

    /// Record a metric and fold `value >= bound` into the verdict.
    /// A NaN value fails the check.
    pub fn check_ge(&mut self, name: &str, value: f64, bound: f64) {
        self.metric(name, value);
        self.verdict = self.verdict && value >= bound;
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\"scenario\":\"");
        out.push_str(&self.scenario);
        out.push_str("\",\"config_echo\":{");
        out.push_str(&format!(
            "\"beta\":{},\"epsilon\":{},\"mode\":[{},{}],\"convention\":\"{}\",\"seed\":{}",
            fmt_real(self.echo.beta),
            fmt_real(self.echo.epsilon),
            self.echo.mode.0,
            self.echo.mode.1,
            self.echo.convention,
            self.echo.seed,
        ));
        out.push_str("},\"metrics\":{");
        for (i, (name, value)) in self.metrics.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('"');
            out.push_str(name);
            out.push_str("\":");
            out.push_str(&fmt_real(*value));
        }
        out.push_str("},\"verdict\":\"");
        out.push_str(if self.verdict { "pass" } else { "fail" });
        out.push_str("\"}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_real(0.5), "5.0000000000000000e-1");
        assert_eq!(fmt_real(1.0), "1.0000000000000000e0");
        let third: f64 = 1.0 / 3.0;
        let text = fmt_real(third);
        assert_eq!(text.parse::<f64>().unwrap(), third);
    }

    #[test]
    fn non_finite_values_render_as_null() {
        assert_eq!(fmt_real(f64::NAN), "null");
        assert_eq!(fmt_real(f64::INFINITY), "null");
    }

    #[test]
    fn report_json_shape_and_key_order() {
        let cfg = parse("[beam]\nbeta = 0.6\nepsilon = 0.2\nmode = [1, 2]\n").unwrap();
        let mut report = VerifyReport::new("demo", &cfg, 7);
        report.metric("zeta", 1.0);
        report.metric("alpha", 2.0);
        report.check_le("bound", 3.0, 1.0);
        let json = report.to_json();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["scenario"], "demo");
        assert_eq!(parsed["verdict"], "fail");
        assert_eq!(parsed["config_echo"]["mode"][0], 1);
        // BTreeMap ordering puts alpha before zeta in the raw bytes
        assert!(json.find("alpha").unwrap() < json.find("zeta").unwrap());
    }
}
