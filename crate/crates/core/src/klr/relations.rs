//! Checks every defining relation inside larger diagrams.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Gen, KlrElement, KlrError, Normalizer};
use crate::cartan::{CartanDatum, Scalar, Vertex};

/// One relation on a fixed label sequence: `lhs = rhs`, both sides bottom-up words with scalars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    pub name: &'static str,
    pub labels: Vec<Vertex>,
    pub lhs: Vec<(Scalar, Vec<Gen>)>,
    pub rhs: Vec<(Scalar, Vec<Gen>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheckConfig {
    pub max_strands: usize,
    /// Largest number of generators placed around an embedded relation.
    pub max_ambient: usize,
    /// Contexts with at most this many generators are enumerated in full.
    pub exhaustive_ambient: usize,
    /// Random contexts (between `exhaustive_ambient + 1` and `max_ambient` generators) per embedding.
    pub samples: usize,
    pub seed: u64,
}

impl Default for RelationCheckConfig {
    fn default() -> Self {
        RelationCheckConfig { max_strands: 4, max_ambient: 4, exhaustive_ambient: 1, samples: 4, seed: 0x5eed }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationFailure {
    pub relation: &'static str,
    pub bottom: Vec<Vertex>,
    pub below: Vec<Gen>,
    pub above: Vec<Gen>,
    /// Normal form of `lhs - rhs` in context.
    pub difference: KlrElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RelationReport {
    pub instances: usize,
    pub checks: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn w(gens: &[Gen]) -> Vec<Gen> {
    gens.to_vec()
}

fn one() -> Scalar {
    Scalar::from(1)
}

/// All relation instances of the presentation for `datum`, on at most `max_strands` strands.
pub fn relation_instances(datum: &CartanDatum, max_strands: usize) -> Vec<RelationInstance> {
    use Gen::{Cross as T, Dot as X};
    let n = datum.vertex_count();
    let mut out = Vec::new();
    let push = |out: &mut Vec<RelationInstance>, name, labels: Vec<Vertex>, lhs, rhs| {
        if labels.len() <= max_strands {
            out.push(RelationInstance { name, labels, lhs, rhs });
        }
    };
    for i in 0..n {
        push(&mut out, "nilhecke dot slide (up)", vec![i, i], vec![(one(), w(&[X(0), T(0)]))], vec![(one(), w(&[T(0), X(1)])), (one(), vec![])]);
        push(&mut out, "nilhecke dot slide (down)", vec![i, i], vec![(one(), w(&[T(0), X(0)]))], vec![(one(), w(&[X(1), T(0)])), (one(), vec![])]);
        push(&mut out, "nilhecke square", vec![i, i], vec![(one(), w(&[T(0), T(0)]))], vec![]);
        push(&mut out, "nilhecke braid", vec![i, i, i], vec![(one(), w(&[T(0), T(1), T(0)]))], vec![(one(), w(&[T(1), T(0), T(1)]))]);
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            push(&mut out, "dot slide, distinct labels", vec![i, j], vec![(one(), w(&[T(0), X(1)]))], vec![(one(), w(&[X(0), T(0)]))]);
            push(&mut out, "dot slide, distinct labels (other strand)", vec![i, j], vec![(one(), w(&[T(0), X(0)]))], vec![(one(), w(&[X(1), T(0)]))]);
            match datum.pair(i, j) {
                -1 => {
                    push(
                        &mut out,
                        "adjacent square",
                        vec![i, j],
                        vec![(one(), w(&[T(0), T(0)]))],
                        vec![(datum.t(i, j), w(&[X(0)])), (datum.t(j, i), w(&[X(1)]))],
                    );
                    push(
                        &mut out,
                        "adjacent braid",
                        vec![i, j, i],
                        vec![(one(), w(&[T(0), T(1), T(0)]))],
                        vec![(one(), w(&[T(1), T(0), T(1)])), (datum.t(i, j), vec![])],
                    );
                }
                _ => {
                    push(&mut out, "distant square", vec![i, j], vec![(one(), w(&[T(0), T(0)]))], vec![(datum.t(i, j), vec![])]);
                    push(&mut out, "distant braid (i,j,i)", vec![i, j, i], vec![(one(), w(&[T(0), T(1), T(0)]))], vec![(one(), w(&[T(1), T(0), T(1)]))]);
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != k {
                    push(&mut out, "braid, distinct ends", vec![i, j, k], vec![(one(), w(&[T(0), T(1), T(0)]))], vec![(one(), w(&[T(1), T(0), T(1)]))]);
                }
            }
        }
    }
    // Generators on disjoint strands commute, for every labelling.
    for labels in label_sequences(n, 2) {
        push(&mut out, "far commute (dots)", labels, vec![(one(), w(&[X(0), X(1)]))], vec![(one(), w(&[X(1), X(0)]))]);
    }
    for labels in label_sequences(n, 3) {
        push(&mut out, "far commute (dot, crossing)", labels.clone(), vec![(one(), w(&[X(0), T(1)]))], vec![(one(), w(&[T(1), X(0)]))]);
        push(&mut out, "far commute (crossing, dot)", labels, vec![(one(), w(&[X(2), T(0)]))], vec![(one(), w(&[T(0), X(2)]))]);
    }
    if max_strands >= 4 {
        for labels in label_sequences(n, 4) {
            push(&mut out, "far commute (crossings)", labels, vec![(one(), w(&[T(0), T(2)]))], vec![(one(), w(&[T(2), T(0)]))]);
        }
    }
    out
}

fn label_sequences(n: usize, len: usize) -> Vec<Vec<Vertex>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..n).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn shift_gens(gens: &[Gen], offset: usize) -> Vec<Gen> {
    gens.iter()
        .map(|g| match *g {
            Gen::Dot(p) => Gen::Dot(p + offset),
            Gen::Cross(k) => Gen::Cross(k + offset),
        })
        .collect()
}

fn all_gens(m: usize) -> Vec<Gen> {
    (0..m).map(Gen::Dot).chain((0..m.saturating_sub(1)).map(Gen::Cross)).collect()
}

fn contexts_up_to(m: usize, size: usize) -> Vec<(Vec<Gen>, Vec<Gen>)> {
    let gens = all_gens(m);
    let mut out = Vec::new();
    for total in 0..=size {
        for below in 0..=total {
            for b in sequences(&gens, below) {
                for a in sequences(&gens, total - below) {
                    out.push((b.clone(), a));
                }
            }
        }
    }
    out
}

fn sequences(gens: &[Gen], len: usize) -> Vec<Vec<Gen>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                gens.iter().map(move |&g| {
                    let mut q = p.clone();
                    q.push(g);
                    q
                })
            })
            .collect();
    }
    out
}

/// Labels at the bottom that become `labels` after the crossings of `below`.
fn pull_back(labels: &[Vertex], below: &[Gen]) -> Vec<Vertex> {
    let mut l = labels.to_vec();
    for g in below.iter().rev() {
        if let Gen::Cross(k) = *g {
            l.swap(k, k + 1);
        }
    }
    l
}

fn side(bottom: &[Vertex], below: &[Gen], mid: &[(Scalar, Vec<Gen>)], above: &[Gen], top: &[Vertex]) -> Result<KlrElement, KlrError> {
    let mut e = KlrElement::zero(bottom.to_vec(), top.to_vec());
    for (c, g) in mid {
        let mut full = below.to_vec();
        full.extend_from_slice(g);
        full.extend_from_slice(above);
        e.add_word(full, *c)?;
    }
    Ok(e)
}

/// Embeds every relation instance into every strand count up to `max_strands`, with all
/// placements and labellings of the extra strands, inside ambient generators below and above.
pub fn relation_check(datum: &CartanDatum, config: &RelationCheckConfig) -> Result<RelationReport, KlrError> {
    let mut report = RelationReport::default();
    let mut normalizer = Normalizer::new(datum);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = datum.vertex_count();
    let mut exhaustive: Vec<Vec<(Vec<Gen>, Vec<Gen>)>> = Vec::new();
    for m in 0..=config.max_strands {
        exhaustive.push(contexts_up_to(m, config.exhaustive_ambient.min(config.max_ambient)));
    }
    for inst in relation_instances(datum, config.max_strands) {
        let width = inst.labels.len();
        for m in width..=config.max_strands {
            for offset in 0..=(m - width) {
                for extra in label_sequences(n, m - width) {
                    let mut mid_labels = extra[..offset].to_vec();
                    mid_labels.extend_from_slice(&inst.labels);
                    mid_labels.extend_from_slice(&extra[offset..]);
                    let lhs: Vec<_> = inst.lhs.iter().map(|(c, g)| (*c, shift_gens(g, offset))).collect();
                    let rhs: Vec<_> = inst.rhs.iter().map(|(c, g)| (*c, shift_gens(g, offset))).collect();
                    report.instances += 1;

                    let mut contexts = exhaustive[m].clone();
                    if config.max_ambient > config.exhaustive_ambient {
                        let gens = all_gens(m);
                        for _ in 0..config.samples {
                            let total = rng.gen_range(config.exhaustive_ambient + 1..=config.max_ambient);
                            let below_len = rng.gen_range(0..=total);
                            let mut pick = |len: usize| -> Vec<Gen> { (0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect() };
                            let below = pick(below_len);
                            let above = pick(total - below_len);
                            contexts.push((below, above));
                        }
                    }
                    for (below, above) in contexts {
                        let bottom = pull_back(&mid_labels, &below);
                        let mut top = mid_labels.clone();
                        // Both sides share the permutation of their leading word.
                        let probe = inst.lhs.first().or(inst.rhs.first()).map(|(_, g)| shift_gens(g, offset)).unwrap_or_default();
                        for g in probe.iter().chain(&above) {
                            if let Gen::Cross(k) = *g {
                                top.swap(k, k + 1);
                            }
                        }
                        let l = side(&bottom, &below, &lhs, &above, &top)?;
                        let r = side(&bottom, &below, &rhs, &above, &top)?;
                        let diff = normalizer.normalize(&l.sub(&r)?)?;
                        report.checks += 1;
                        if !diff.is_zero() {
                            report.failures.push(RelationFailure {
                                relation: inst.name,
                                bottom,
                                below,
                                above,
                                difference: diff,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}
