//! Line-oriented instance files.
//!
//! ```text
//! # planted_opt 4          optional metadata comment
//! d n [K]
//! lo_1 hi_1 ... lo_d hi_d                                  plain box (2d columns)
//! lo_1 hi_1 ... lo_d hi_d sigma ilo_1 ihi_1 ... ilo_d ihi_d   sigma object (4d+1)
//! ```
//!
//! Rationals are written `p` or `p/q` in lowest terms. Writing then parsing
//! is the identity, and parsing then writing a canonical file reproduces it
//! byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use super::{Coordinate, HyperRect, Instance, Objects, ShapeTag, SigmaObject};
use crate::error::{Error, Result};

const PLANTED: &str = "# planted_opt";

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    if let Some(t) = inst.planted_opt() {
        let _ = writeln!(out, "{PLANTED} {t}");
    }
    match inst.declared_k() {
        Some(k) => {
            let _ = writeln!(out, "{} {} {}", inst.dim(), inst.len(), k);
        }
        None => {
            let _ = writeln!(out, "{} {}", inst.dim(), inst.len());
        }
    }
    let push_box = |out: &mut String, b: &HyperRect| {
        for j in 0..b.dim() {
            if j > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{} {}", b.lo(j), b.hi(j));
        }
    };
    match inst.objects() {
        Objects::Boxes(v) => {
            for b in v {
                push_box(&mut out, b);
                out.push('\n');
            }
        }
        Objects::Sigma(v) => {
            for f in v {
                push_box(&mut out, f.out_box());
                let _ = write!(out, " {} ", f.sigma());
                push_box(&mut out, f.in_box());
                out.push('\n');
            }
        }
    }
    out
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut planted = None;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = loop {
        match lines.next() {
            None => return Err(parse_err(1, "missing header line `d n [K]`")),
            Some((ln, l)) if l.starts_with('#') => {
                if let Some(rest) = l.strip_prefix(PLANTED) {
                    let t = rest
                        .trim()
                        .parse::<usize>()
                        .map_err(|_| parse_err(ln, "bad planted_opt value"))?;
                    planted = Some(t);
                }
            }
            Some(h) => break h,
        }
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if !(2..=3).contains(&fields.len()) {
        return Err(parse_err(hline, "header must be `d n [K]`"));
    }
    let dim: usize = fields[0]
        .parse()
        .map_err(|_| parse_err(hline, "dimension is not a non-negative integer"))?;
    let n: usize = fields[1]
        .parse()
        .map_err(|_| parse_err(hline, "count is not a non-negative integer"))?;
    let declared_k = match fields.get(2) {
        Some(s) => Some(s.parse::<Coordinate>().map_err(|_| parse_err(hline, "bad K"))?),
        None => None,
    };
    if dim == 0 {
        return Err(parse_err(hline, "dimension must be positive"));
    }

    let mut boxes = Vec::new();
    let mut sigmas = Vec::new();
    for (ln, line) in lines.by_ref() {
        if line.starts_with('#') {
            continue;
        }
        let vals = line
            .split_whitespace()
            .map(|t| t.parse::<Coordinate>().map_err(|_| parse_err(ln, format!("not a rational: {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let mk = |v: &[Coordinate]| -> Result<HyperRect> {
            HyperRect::from_bounds(v.chunks(2).map(|c| (c[0].clone(), c[1].clone())))
                .map_err(|e| parse_err(ln, e.to_string()))
        };
        if vals.len() == 2 * dim {
            boxes.push(mk(&vals)?);
        } else if vals.len() == 4 * dim + 1 {
            let out = mk(&vals[..2 * dim])?;
            let inn = mk(&vals[2 * dim + 1..])?;
            let f = SigmaObject::new(out, inn, vals[2 * dim].clone(), ShapeTag::Unspecified)
                .map_err(|e| parse_err(ln, e.to_string()))?;
            sigmas.push(f);
        } else {
            return Err(parse_err(
                ln,
                format!("expected {} or {} columns, got {}", 2 * dim, 4 * dim + 1, vals.len()),
            ));
        }
    }
    if !boxes.is_empty() && !sigmas.is_empty() {
        return Err(parse_err(hline, "file mixes plain boxes and sigma objects"));
    }
    let objects = if sigmas.is_empty() {
        Objects::Boxes(boxes)
    } else {
        Objects::Sigma(sigmas)
    };
    let inst = Instance::new(dim, objects, declared_k).map_err(|e| parse_err(hline, e.to_string()))?;
    if inst.len() != n {
        return Err(parse_err(hline, format!("header declares {n} objects, found {}", inst.len())));
    }
    Ok(match planted {
        Some(t) => inst.with_planted_opt(t),
        None => inst,
    })
}

pub fn read_instance_file(path: impl AsRef<Path>) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    parse_instance(&text)
}

pub fn write_instance_file(path: impl AsRef<Path>, inst: &Instance) -> Result<()> {
    std::fs::write(path, write_instance(inst))?;
    Ok(())
}
