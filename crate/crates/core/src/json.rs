//! JSON boundary: parse domains and periodic sets, emit verdicts.
//!
//! Rationals cross this boundary as exact `"p/q"` strings, never floats.
//! Schema violations (shape, non-rational strings) are `Error::Json`;
//! structurally valid inputs that break a domain invariant (overlap, bad
//! offsets) surface as their own error variants. Every verdict object
//! carries a `method` field naming the arithmetic that produced it.

use serde_json::{json, Value};

use crate::domain::{IntervalUnion, PeriodicSet};
use crate::embedding::{RankMethod, SpanBasis};
use crate::error::{Error, Result};
use crate::newton::APVerdict;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::search::{CrosscheckRow, SearchOutcome, SpectrumVerdict};
use crate::structure::{FiberDecomposition, WindowProfile};

fn bad(msg: &str) -> Error {
    Error::Json(msg.to_string())
}

fn rational_field(v: &Value, what: &str) -> Result<Rational> {
    let s = v
        .as_str()
        .ok_or_else(|| bad(&format!("{what} must be a \"p/q\" string")))?;
    parse_rational(s).map_err(|_| bad(&format!("{what} is not a rational: {s:?}")))
}

/// Parse `{"intervals": [["p/q","p'/q'"], …]}`.
pub fn parse_domain(text: &str) -> Result<IntervalUnion> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let arr = v
        .get("intervals")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("expected {\"intervals\": [[left, right], …]}"))?;
    let mut pairs = Vec::with_capacity(arr.len());
    for entry in arr {
        let pair = entry
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| bad("each interval must be a [left, right] pair"))?;
        pairs.push((
            rational_field(&pair[0], "interval endpoint")?,
            rational_field(&pair[1], "interval endpoint")?,
        ));
    }
    IntervalUnion::from_endpoints(&pairs)
}

/// Parse `{"period": "p/q", "offsets": ["p/q", …]}`.
pub fn parse_periodic_set(text: &str) -> Result<PeriodicSet> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let period = rational_field(
        v.get("period").ok_or_else(|| bad("missing \"period\""))?,
        "period",
    )?;
    let arr = v
        .get("offsets")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("expected \"offsets\" array"))?;
    let mut offsets = Vec::with_capacity(arr.len());
    for entry in arr {
        offsets.push(rational_field(entry, "offset")?);
    }
    PeriodicSet::new(period, offsets)
}

fn fr(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn domain_json(domain: &IntervalUnion) -> Value {
    json!({
        "intervals": domain
            .endpoints()
            .iter()
            .map(|(a, b)| json!([format_rational(a), format_rational(b)]))
            .collect::<Vec<_>>()
    })
}

pub fn periodic_set_json(set: &PeriodicSet) -> Value {
    json!({
        "period": format_rational(set.period()),
        "offsets": set.offsets().iter().map(format_rational).collect::<Vec<_>>(),
    })
}

pub fn spectrum_verdict_json(v: &SpectrumVerdict) -> Value {
    json!({
        "is_spectrum": v.is_spectrum,
        "orthogonality_certified": v.orthogonality_certified,
        "density_ok": v.density_ok,
        "d_integer": v.d_integer,
        "tiles": v.tiles,
        "failing_pair": v
            .failing_pair
            .as_ref()
            .map(|(a, b, k)| json!([format_rational(a), format_rational(b), k])),
        "method": "exact",
    })
}

pub fn ap_verdict_json(v: &APVerdict) -> Value {
    json!({
        "hypothesis_holds": v.hypothesis_holds,
        "full_ap_in_zeroset": v.full_ap_in_zeroset,
        "d_integer": v.d_is_integer,
        "tiles": v.tiles,
        "pairing": v
            .pairing
            .as_ref()
            .map(|p| p.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>()),
        "failure_witness": v
            .failure_witness
            .as_ref()
            .map(|(k, xi)| json!([k, format_rational(xi)])),
        "method": "exact",
    })
}

pub fn rank_json(basis: &SpanBasis) -> Value {
    json!({
        "rank": basis.rank,
        "base_points": basis.base_points.iter().map(format_rational).collect::<Vec<_>>(),
        "method": match basis.method {
            RankMethod::Exact => "exact",
            RankMethod::Numeric => "numeric",
        },
    })
}

pub fn decomposition_json(dec: &FiberDecomposition) -> Value {
    json!({
        "period": dec.period,
        "classes": dec
            .classes
            .iter()
            .map(|c| {
                json!({
                    "cells": c
                        .cells
                        .iter()
                        .map(|(l, r)| json!([format_rational(l), format_rational(r)]))
                        .collect::<Vec<_>>(),
                    "shifts": c.shifts,
                })
            })
            .collect::<Vec<_>>(),
        "method": "exact",
    })
}

pub fn search_outcome_json(out: &SearchOutcome) -> Value {
    json!({
        "spectra": out.spectra.iter().map(periodic_set_json).collect::<Vec<_>>(),
        "exhausted": out.exhausted,
        "nodes": out.nodes,
        "method": "exact",
    })
}

pub fn crosscheck_json(rows: &[CrosscheckRow]) -> Value {
    json!({
        "rows": rows
            .iter()
            .map(|r| {
                json!({
                    "d": r.d,
                    "tiles": r.tiles,
                    "spectrum_found": r.spectrum_found,
                    "witness": r.witness.as_ref().map(periodic_set_json),
                })
            })
            .collect::<Vec<_>>(),
        "method": "exact",
    })
}

pub fn window_profile_json(profile: &WindowProfile) -> Value {
    json!({
        "window_length": fr(&profile.window_length),
        "entries": profile
            .entries
            .iter()
            .map(|e| {
                json!({
                    "index": e.index,
                    "points": e.points.iter().map(format_rational).collect::<Vec<_>>(),
                    "word": e.word.iter().map(format_rational).collect::<Vec<_>>(),
                    "dim": e.dim,
                    "truncated": e.truncated,
                })
            })
            .collect::<Vec<_>>(),
        "distinct_word_count": profile.distinct_word_count,
        "word_count_bound": profile.word_count_bound.as_ref().map(|n| n.to_string()),
        "separation_hint": profile.separation_hint.as_ref().map(format_rational),
        "max_dim": profile.max_dim,
    })
}
