//! `key: value` text rendering of every report type.

use std::fmt::{Display, Write as _};

use crate::density::{DensityCertificate, LemmaFReport, MinimizerResult};
use crate::hom::HomCountReport;
use crate::verify::{ChainReport, VerificationReport};

#[derive(Default)]
struct Kv(String);

impl Kv {
    fn put(&mut self, key: &str, value: impl Display) -> &mut Self {
        let _ = writeln!(self.0, "{key}: {value}");
        self
    }

    fn opt(&mut self, key: &str, value: Option<impl Display>) -> &mut Self {
        match value {
            Some(v) => self.put(key, v),
            None => self.put(key, "none"),
        }
    }
}

pub trait TextReport {
    fn to_text(&self) -> String;
}

impl TextReport for HomCountReport {
    fn to_text(&self) -> String {
        let mut kv = Kv::default();
        kv.put("count", &self.count)
            .put("bound", &self.bound)
            .put("holds", self.holds);
        kv.0
    }
}

impl TextReport for DensityCertificate {
    fn to_text(&self) -> String {
        let mut kv = Kv::default();
        kv.put("n", self.n)
            .put("eps", self.params.eps())
            .put("d", self.params.d())
            .put("min_subset_size", self.params.min_size(self.n))
            .put("status", self.status)
            .opt("witness", self.witness.as_ref())
            .opt("witness_size", self.witness.as_ref().map(|w| w.len()))
            .opt("witness_edges", self.witness_edges)
            .put("checked_subsets", self.checked_subsets);
        kv.0
    }
}

impl TextReport for MinimizerResult {
    fn to_text(&self) -> String {
        let values: Vec<String> = self
            .minimizer
            .values()
            .iter()
            .map(|v| v.to_string())
            .collect();
        let mut kv = Kv::default();
        kv.put("n", values.len())
            .put("omega", &self.omega)
            .put("ones", &self.ones)
            .opt("z", self.z)
            .put("delta", &self.delta)
            .put("minimizer", values.join(" "))
            .put("gap_to_minus_n", self.gap_to_lower_bound());
        kv.0
    }
}

impl TextReport for LemmaFReport {
    fn to_text(&self) -> String {
        let mut kv = Kv::default();
        kv.put("n", self.n)
            .put("eps", self.params.eps())
            .put("d", self.params.d())
            .put("trials", self.trials)
            .put("violations", self.violations.len())
            .opt("min_slack", self.min_slack.as_ref())
            .opt("omega", self.omega.as_ref())
            .opt("omega_ge_minus_n", self.omega_holds)
            .put("holds", self.holds());
        for (i, v) in self.violations.iter().enumerate() {
            let f: Vec<String> = v.f.values().iter().map(|x| x.to_string()).collect();
            kv.put(&format!("violation.{i}.f"), f.join(" "))
                .put(&format!("violation.{i}.lhs"), &v.lhs)
                .put(&format!("violation.{i}.rhs"), &v.rhs);
        }
        kv.0
    }
}

impl TextReport for VerificationReport {
    fn to_text(&self) -> String {
        let mut kv = Kv::default();
        kv.put("n", self.n)
            .put("m", self.m)
            .put("r", self.r)
            .put("eps", &self.eps)
            .put("d", &self.d)
            .put("precondition_n_ok", self.precondition_n_ok)
            .put("density_status", self.density_status)
            .put("c_r", &self.c_r)
            .put("bound", &self.bound)
            .put("holds", self.holds)
            .put("slack", &self.slack)
            .put("conditional", self.conditional);
        kv.0
    }
}

impl TextReport for ChainReport {
    fn to_text(&self) -> String {
        let mut kv = Kv::default();
        kv.put("n", self.n)
            .put("m", self.m)
            .put("r", self.r)
            .put("eps", &self.eps)
            .put("d", &self.d)
            .put("precondition_n_ok", self.precondition_n_ok)
            .put("density_status", self.density_status)
            .put("z_set", &self.z_set)
            .put("walk_total", &self.walk_total)
            .put("c_r", &self.c_r);
        for s in &self.steps {
            let requires: Vec<&str> = s
                .requires
                .iter()
                .map(|h| match h {
                    crate::verify::Hypothesis::Density => "density",
                    crate::verify::Hypothesis::Size => "size",
                })
                .collect();
            let requires = if requires.is_empty() {
                "none".to_string()
            } else {
                requires.join("+")
            };
            kv.put(&format!("step.{}.statement", s.id), s.statement)
                .put(&format!("step.{}.lhs", s.id), &s.lhs)
                .put(&format!("step.{}.rhs", s.id), &s.rhs)
                .put(&format!("step.{}.holds", s.id), s.holds)
                .put(&format!("step.{}.requires", s.id), requires)
                .put(&format!("step.{}.applicable", s.id), s.applicable);
        }
        kv.put("sound", self.sound());
        kv.0
    }
}
