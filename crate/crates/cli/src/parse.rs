//! Text and file inputs. Text syntax is 1-based; JSON files are 0-based.

use std::fs;
use std::path::Path;

use kmact_core::cartan::grassmannian_support;
use kmact_core::klr::{Gen, KlrElement};
use kmact_core::morphcalc::{Letter, MorphWord};
use kmact_core::paths::{Sign, SlideSeq, Step};
use kmact_core::{CartanDatum, Scalar, Support, Vertex, Weight};
use serde::Deserialize;

use crate::CliError;

#[derive(Deserialize)]
struct CartanFile {
    vertices: usize,
    edges: Vec<[Vertex; 2]>,
    #[serde(default)]
    t: Vec<ScalarEntry>,
}

#[derive(Deserialize)]
struct ScalarEntry {
    i: Vertex,
    j: Vertex,
    value: String,
}

#[derive(Deserialize)]
struct SupportFile {
    base_pairings: Vec<i64>,
    weights: Vec<Vec<i64>>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("cannot parse {}: {e}", path.display())))
}

pub fn cartan_file(path: &Path) -> Result<CartanDatum, CliError> {
    let file: CartanFile = read_json(path)?;
    let mut scalars = Vec::with_capacity(file.t.len());
    for e in &file.t {
        let v: Scalar = e.value.trim().parse().map_err(|_| CliError::usage(format!("bad scalar {:?}", e.value)))?;
        scalars.push((e.i, e.j, v));
    }
    let datum = CartanDatum::new(file.vertices, file.edges.iter().map(|&[i, j]| (i, j)))?;
    Ok(datum.with_scalars(scalars)?)
}

pub fn support_file(path: &Path) -> Result<Support, CliError> {
    let file: SupportFile = read_json(path)?;
    Ok(Support::new(file.base_pairings, file.weights)?)
}

pub fn grassmannian(spec: &str) -> Result<(Support, CartanDatum), CliError> {
    let parts = int_list(spec)?;
    let &[m, n, total] = parts.as_slice() else {
        return Err(CliError::usage(format!("expected m,n,N, found {spec:?}")));
    };
    if m < 0 || n < 0 || total < 0 {
        return Err(CliError::usage(format!("grassmannian parameters must be nonnegative: {spec:?}")));
    }
    let support = grassmannian_support(m as usize, n as usize, total as usize)?;
    Ok((support, CartanDatum::type_a(n as usize - 1)))
}

/// `a,b,...` with optional surrounding brackets.
pub fn int_list(text: &str) -> Result<Vec<i64>, CliError> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| CliError::usage(format!("expected integers, found {text:?}"))))
        .collect()
}

pub fn window(text: &str) -> Result<(i64, i64), CliError> {
    match int_list(text)?.as_slice() {
        &[lo, hi] if lo <= hi => Ok((lo, hi)),
        _ => Err(CliError::usage(format!("expected lo,hi with lo <= hi, found {text:?}"))),
    }
}

pub fn weight(text: &str, support: &Support) -> Result<Weight, CliError> {
    let coords = int_list(text)?;
    if coords.len() != support.rank() {
        return Err(CliError::usage(format!("weight {text:?} needs {} root coordinates", support.rank())));
    }
    Ok(support.weight(coords))
}

fn one_based(text: &str, what: &str) -> Result<Vertex, CliError> {
    match text.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v - 1),
        _ => Err(CliError::usage(format!("bad {what} {text:?}"))),
    }
}

/// `E1 F2 E1^2 @ [a1,...]`; without `@`, the domain comes from `default_weight`.
pub fn word(text: &str, default_weight: Option<&str>, support: &Support) -> Result<MorphWord, CliError> {
    let (letters_text, weight_text) = match text.split_once('@') {
        Some((l, w)) => (l, Some(w)),
        None => (text, default_weight),
    };
    let weight_text = weight_text.ok_or_else(|| CliError::usage(format!("word {text:?} needs a domain weight")))?;
    let mut letters = Vec::new();
    for tok in letters_text.split_whitespace().filter(|&t| t != "1") {
        let (body, divided) = match tok.strip_suffix("^2") {
            Some(b) => (b, true),
            None => (tok, false),
        };
        let bad = || CliError::usage(format!("bad letter {tok:?}"));
        let (kind, idx) = body.split_at_checked(1).ok_or_else(bad)?;
        let v = one_based(idx, "letter index").map_err(|_| bad())?;
        letters.push(match (kind, divided) {
            ("E", false) => Letter::E(v),
            ("F", false) => Letter::F(v),
            ("E", true) => Letter::Ed2(v),
            _ => return Err(bad()),
        });
    }
    Ok(MorphWord::new(letters, weight(weight_text, support)?))
}

/// `e(i,j,...); [c] g g ... + [c] g ...` with `x<p>` a dot on strand `p` and `t<k>` the
/// crossing of strands `k`, `k+1`.
pub fn klr_element(text: &str) -> Result<KlrElement, CliError> {
    let (head, body) = text.split_once(';').unwrap_or((text, ""));
    let head = head.trim();
    let labels = head
        .strip_prefix("e(")
        .and_then(|h| h.strip_suffix(')'))
        .ok_or_else(|| CliError::usage(format!("expected e(i,j,...), found {head:?}")))?;
    let bottom = int_list(labels)?
        .into_iter()
        .map(|v| one_based(&v.to_string(), "label"))
        .collect::<Result<Vec<_>, _>>()?;
    if body.trim().is_empty() {
        return Ok(KlrElement::idempotent(bottom));
    }

    let mut terms: Vec<(Scalar, Vec<Gen>)> = Vec::new();
    let mut sign = Scalar::from(1);
    let mut coeff: Option<Scalar> = None;
    let mut gens: Vec<Gen> = Vec::new();
    let mut open = false;
    let mut flush = |sign: &mut Scalar, coeff: &mut Option<Scalar>, gens: &mut Vec<Gen>, open: &mut bool| {
        if *open {
            terms.push((*sign * coeff.take().unwrap_or(Scalar::from(1)), std::mem::take(gens)));
        }
        *sign = Scalar::from(1);
        *open = false;
    };
    for tok in body.split_whitespace() {
        match tok {
            "+" | "-" => {
                if !open {
                    return Err(CliError::usage(format!("dangling {tok:?} in {text:?}")));
                }
                flush(&mut sign, &mut coeff, &mut gens, &mut open);
                if tok == "-" {
                    sign = Scalar::from(-1);
                }
            }
            _ => {
                let gen = match tok.split_at_checked(1) {
                    Some(("x", p)) => Some(Gen::Dot(one_based(p, "dot position")?)),
                    Some(("t", k)) => Some(Gen::Cross(one_based(k, "crossing position")?)),
                    _ => None,
                };
                match gen {
                    Some(g) => gens.push(g),
                    None if !open => {
                        let c: Scalar = tok.parse().map_err(|_| CliError::usage(format!("bad token {tok:?}")))?;
                        coeff = Some(c);
                    }
                    None => return Err(CliError::usage(format!("coefficient {tok:?} must start a term"))),
                }
                open = true;
            }
        }
    }
    if !open {
        return Err(CliError::usage(format!("dangling sign in {text:?}")));
    }
    flush(&mut sign, &mut coeff, &mut gens, &mut open);

    let mut top = None;
    let mut element: Option<KlrElement> = None;
    for (c, g) in terms {
        let word = kmact_core::klr::KlrWord::new(bottom.clone(), g.clone());
        let t = word.top();
        match &top {
            None => top = Some(t),
            Some(t0) if *t0 != t => return Err(CliError::usage("terms end in different label sequences".into())),
            _ => {}
        }
        let e = element.get_or_insert_with(|| KlrElement::zero(bottom.clone(), word.top()));
        e.add_word(g, c)?;
    }
    Ok(element.expect("at least one term"))
}

/// A JSON array of `[sign, vertex]` pairs.
pub fn steps(text: &str) -> Result<Vec<Step>, CliError> {
    let raw: Vec<(i64, Vertex)> =
        serde_json::from_str(text).map_err(|e| CliError::usage(format!("bad sequence {text:?}: {e}")))?;
    raw.into_iter().map(step_from).collect()
}

pub fn step(text: &str) -> Result<Step, CliError> {
    let raw: (i64, Vertex) = serde_json::from_str(text).map_err(|e| CliError::usage(format!("bad step {text:?}: {e}")))?;
    step_from(raw)
}

fn step_from((c, k): (i64, Vertex)) -> Result<Step, CliError> {
    let sign = Sign::from_value(c).ok_or_else(|| CliError::usage(format!("sign must be 1 or -1, found {c}")))?;
    Ok((sign, k))
}

pub fn sequence(base: &str, seq: &str, support: &Support) -> Result<SlideSeq, CliError> {
    let steps = steps(seq)?;
    if let Some(&(_, k)) = steps.iter().find(|&&(_, k)| k >= support.rank()) {
        return Err(CliError::usage(format!("vertex {k} is out of range")));
    }
    Ok(SlideSeq::new(weight(base, support)?, steps))
}
