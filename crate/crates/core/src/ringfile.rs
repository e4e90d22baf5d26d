//! Ring specification files.
//!
//! ```text
//! [field]
//! p = 2
//! n = 1
//!
//! [ring]
//! form = "cab"
//! m = 2
//! c0 = "(x^2 + x + 1)*(x^5 + x^2 + 1)"
//! c1 = "x^2 + x + 1"
//! ```
//!
//! Custom rings give `delta = [..]` and structure constants
//! `t_i_j = "p0, p1, ..."` for `b_i b_j`. Entries with `i = 0` default to the
//! identity and `t_j_i` defaults to `t_i_j`.

use std::path::Path;

use toml::{Table, Value};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Fq};
use crate::poly::Poly;
use crate::ring::{CoordinateRing, RingForm, RingSpec};

/// Parses a specification without validating the ring axioms.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let doc: Table = text.parse().map_err(|e: toml::de::Error| Error::Parse {
        line: e.span().map(|s| line_of_offset(text, s.start)),
        field: None,
        message: e.message().trim().to_string(),
    })?;
    let locate = |key: &str| Locator { text, key: key.to_string() };

    for section in doc.keys() {
        if section != "field" && section != "ring" {
            return Err(locate(section).error(format!("unknown section `{section}`")));
        }
    }
    let field_tab = section(&doc, "field", text)?;
    let ring_tab = section(&doc, "ring", text)?;

    for key in field_tab.keys() {
        if !matches!(key.as_str(), "p" | "n" | "modulus") {
            return Err(locate(&format!("field.{key}")).error(format!("unknown key `{key}`")));
        }
    }
    let p = uint(field_tab, "p", "field.p", text)?.ok_or_else(|| locate("field.p").missing())? as u32;
    let n = uint(field_tab, "n", "field.n", text)?.unwrap_or(1) as u32;
    let modulus = match (n, str_value(field_tab, "modulus", "field.modulus", text)?) {
        (1, None) => None,
        (_, None) => return Err(locate("field.modulus").error(format!("key `modulus` is required when n = {n}"))),
        (_, Some(lit)) => {
            let fp = Fq::prime(p).map_err(|e| locate("field.p").error(e.to_string()))?;
            let poly = Poly::parse(lit, &fp, "t").map_err(|e| locate("field.modulus").wrap(e))?;
            Some(poly.coeffs().iter().map(|c| c.index()).collect())
        }
    };
    let field = FieldSpec { p, n, modulus };
    let k = Fq::new(&field).map_err(|e| locate("field").error(e.to_string()))?;

    let m = uint(ring_tab, "m", "ring.m", text)?.ok_or_else(|| locate("ring.m").missing())? as usize;
    let form = str_value(ring_tab, "form", "ring.form", text)?.unwrap_or("cab");
    let poly_at = |key: &str, lit: &str| -> Result<Poly> {
        Poly::parse(lit, &k, "x").map_err(|e| locate(&format!("ring.{key}")).wrap(e))
    };

    let form = match form {
        "cab" => {
            let mut coeffs = vec![Poly::zero(); m];
            for key in ring_tab.keys() {
                if matches!(key.as_str(), "form" | "m") {
                    continue;
                }
                let j = key
                    .strip_prefix('c')
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&j| j < m)
                    .ok_or_else(|| locate(&format!("ring.{key}")).error(format!("unknown key `{key}`")))?;
                let lit = str_value(ring_tab, key, &format!("ring.{key}"), text)?.unwrap();
                coeffs[j] = poly_at(key, lit)?;
            }
            if !ring_tab.contains_key("c0") {
                return Err(locate("ring.c0").missing());
            }
            RingForm::Cab { coeffs }
        }
        "custom" => {
            let delta = match ring_tab.get("delta") {
                Some(Value::Array(items)) => items
                    .iter()
                    .map(|v| v.as_integer().filter(|&d| d >= 0).map(|d| d as u64))
                    .collect::<Option<Vec<u64>>>()
                    .ok_or_else(|| locate("ring.delta").error("expected an array of nonnegative integers"))?,
                Some(_) => return Err(locate("ring.delta").error("expected an array of nonnegative integers")),
                None => return Err(locate("ring.delta").missing()),
            };
            let mut table: Vec<Vec<Option<Vec<Poly>>>> = vec![vec![None; m]; m];
            for key in ring_tab.keys() {
                if matches!(key.as_str(), "form" | "m" | "delta") {
                    continue;
                }
                let unknown = || locate(&format!("ring.{key}")).error(format!("unknown key `{key}`"));
                let mut parts = key.strip_prefix("t_").ok_or_else(unknown)?.split('_');
                let (Some(i), Some(j), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(unknown());
                };
                let (Ok(i), Ok(j)) = (i.parse::<usize>(), j.parse::<usize>()) else {
                    return Err(unknown());
                };
                if i >= m || j >= m {
                    return Err(unknown());
                }
                let lit = str_value(ring_tab, key, &format!("ring.{key}"), text)?.unwrap();
                let entry = lit.split(',').map(|s| poly_at(key, s)).collect::<Result<Vec<Poly>>>()?;
                if entry.len() != m {
                    return Err(locate(&format!("ring.{key}"))
                        .error(format!("expected {m} comma-separated polynomials, found {}", entry.len())));
                }
                table[i][j] = Some(entry);
            }
            let mut full = vec![vec![Vec::new(); m]; m];
            for i in 0..m {
                for j in 0..m {
                    full[i][j] = match (&table[i][j], &table[j][i]) {
                        (Some(e), _) | (None, Some(e)) => e.clone(),
                        (None, None) if i == 0 || j == 0 => {
                            let mut e = vec![Poly::zero(); m];
                            e[i + j] = Poly::one();
                            e
                        }
                        (None, None) => {
                            return Err(locate(&format!("ring.t_{i}_{j}")).missing());
                        }
                    };
                }
            }
            RingForm::Custom { delta, table: full }
        }
        other => return Err(locate("ring.form").error(format!("unknown form `{other}`; expected cab or custom"))),
    };
    Ok(RingSpec { field, m, form })
}

/// Reads, parses and validates a ring file.
pub fn load_ring(path: impl AsRef<Path>) -> Result<CoordinateRing> {
    let text = std::fs::read_to_string(path.as_ref())?;
    CoordinateRing::new(&parse_ring_spec(&text)?)
}

pub fn parse_ring(text: &str) -> Result<CoordinateRing> {
    CoordinateRing::new(&parse_ring_spec(text)?)
}

/// Serializes a specification in the file format; `parse_ring_spec` inverts it.
pub fn format_ring_spec(spec: &RingSpec) -> Result<String> {
    let k = Fq::new(&spec.field)?;
    let mut out = String::from("[field]\n");
    out.push_str(&format!("p = {}\nn = {}\n", spec.field.p, spec.field.n));
    if let Some(modulus) = &spec.field.modulus {
        let fp = Fq::prime(spec.field.p)?;
        let poly = Poly::new(modulus.iter().map(|&c| fp.from_int(c as i64)).collect());
        out.push_str(&format!("modulus = \"{}\"\n", poly.format(&fp, "t")));
    }
    out.push_str("\n[ring]\n");
    match &spec.form {
        RingForm::Cab { coeffs } => {
            out.push_str(&format!("form = \"cab\"\nm = {}\n", spec.m));
            for (j, c) in coeffs.iter().enumerate() {
                out.push_str(&format!("c{j} = \"{}\"\n", c.format(&k, "x")));
            }
        }
        RingForm::Custom { delta, table } => {
            let ds: Vec<String> = delta.iter().map(u64::to_string).collect();
            out.push_str(&format!("form = \"custom\"\nm = {}\ndelta = [{}]\n", spec.m, ds.join(", ")));
            for i in 0..spec.m {
                for j in i..spec.m {
                    let entry: Vec<String> = table[i][j].iter().map(|c| c.format(&k, "x")).collect();
                    out.push_str(&format!("t_{i}_{j} = \"{}\"\n", entry.join(", ")));
                }
            }
        }
    }
    Ok(out)
}

fn section<'a>(doc: &'a Table, name: &str, text: &str) -> Result<&'a Table> {
    match doc.get(name) {
        Some(Value::Table(t)) => Ok(t),
        Some(_) => Err(Locator { text, key: name.into() }.error(format!("`{name}` must be a section"))),
        None => {
            Err(Error::Parse { line: None, field: Some(name.into()), message: format!("missing section [{name}]") })
        }
    }
}

fn uint(tab: &Table, key: &str, path: &str, text: &str) -> Result<Option<u64>> {
    match tab.get(key) {
        None => Ok(None),
        Some(Value::Integer(v)) if *v >= 0 => Ok(Some(*v as u64)),
        Some(_) => Err(Locator { text, key: path.into() }.error("expected a nonnegative integer")),
    }
}

fn str_value<'a>(tab: &'a Table, key: &str, path: &str, text: &str) -> Result<Option<&'a str>> {
    match tab.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(s)),
        Some(_) => Err(Locator { text, key: path.into() }.error("expected a string")),
    }
}

/// Attaches a dotted key and its line to diagnostics.
struct Locator<'a> {
    text: &'a str,
    key: String,
}

impl Locator<'_> {
    fn line(&self) -> Option<usize> {
        let (sect, leaf) = match self.key.split_once('.') {
            Some((s, l)) => (Some(s), l),
            None => (None, self.key.as_str()),
        };
        let mut current = None::<&str>;
        for (idx, raw) in self.text.lines().enumerate() {
            let line = raw.trim();
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                current = Some(name.trim());
                if sect.is_none() && name.trim() == leaf {
                    return Some(idx + 1);
                }
                continue;
            }
            if sect.is_some() && current != sect {
                continue;
            }
            if let Some((k, _)) = line.split_once('=') {
                if k.trim() == leaf {
                    return Some(idx + 1);
                }
            }
        }
        None
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line(), field: Some(self.key.clone()), message: message.into() }
    }

    fn missing(&self) -> Error {
        let leaf = self.key.rsplit('.').next().unwrap_or(&self.key);
        Error::Parse { line: None, field: Some(self.key.clone()), message: format!("missing key `{leaf}`") }
    }

    fn wrap(&self, err: Error) -> Error {
        match err {
            Error::Parse { message, .. } => self.error(message),
            other => self.error(other.to_string()),
        }
    }
}

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}
