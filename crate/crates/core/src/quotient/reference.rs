use std::collections::{BTreeMap, BTreeSet};

use super::{invert_class, ClassId, QuotientWindow};
use crate::omega::ReillyElement;
use crate::verdict::{Status, Verdict, Witness};
use crate::verifier::VerifierError;
use crate::window::{SWindow, Window};

/// The map `[a,b] -> a⁻¹b` from the quotient into the ambient S(G,θ).
#[derive(Debug, Clone)]
pub struct ReferenceComparison {
    /// All members of a class have the same image. Counterexample `[a,b,c,d]`.
    pub well_defined: Verdict,
    /// Distinct classes have distinct images. Counterexample: two representatives.
    pub injective: Verdict,
    /// Every ambient element with indices `<= N'` is an image. Witness:
    /// indices `[m, g, n]`, elements the class representative.
    pub surjective: Verdict,
    pub multiplicative: Verdict,
    /// `[b,a]` maps to the inverse of the image of `[a,b]`.
    pub inverse: Verdict,
    /// Image of each class, indexed by class id.
    pub images: Vec<ReillyElement>,
    pub image_size: usize,
    /// Number of ambient elements with indices `<= N`.
    pub window_size: usize,
    /// Images are distinct and are exactly the ambient elements with indices `<= N`.
    pub bijective_onto_window: bool,
}

impl ReferenceComparison {
    pub fn entries(&self) -> Vec<(&'static str, &Verdict)> {
        vec![
            ("well-defined", &self.well_defined),
            ("injective", &self.injective),
            ("surjective", &self.surjective),
            ("multiplicative", &self.multiplicative),
            ("inverse", &self.inverse),
        ]
    }

    pub fn status(&self) -> Status {
        self.entries()
            .into_iter()
            .fold(Status::Pass, |acc, (_, v)| acc.worst(v.status))
    }
}

/// Compares the quotient with the ambient semigroup the window was closed in.
pub fn compare_to_reference(
    s: &SWindow,
    qw: &QuotientWindow,
    targets: Window,
) -> Result<ReferenceComparison, VerifierError> {
    let ambient = s.ambient().ok_or(VerifierError::NeedsReferenceMode)?;
    if targets.bound > s.window().bound {
        return Err(VerifierError::TargetsExceedWindow {
            targets: targets.bound,
            window: s.window().bound,
        });
    }
    let triple = |id| s.triple(id).expect("reference mode");
    let image = |a, b| ambient.multiply(ambient.invert(triple(a)), triple(b));

    let mut images = Vec::with_capacity(qw.len());
    let mut well_defined = None;
    let mut checked = 0;
    for q in 0..qw.len() {
        let rep = qw.class(q).representative;
        let v = image(rep.a, rep.b);
        for p in &qw.class(q).members {
            checked += 1;
            if well_defined.is_none() && image(p.a, p.b) != v {
                well_defined = Some(Witness::elements(vec![rep.a, rep.b, p.a, p.b]));
            }
        }
        images.push(v);
    }
    let well_defined = match well_defined {
        Some(ce) => Verdict::fail(ce, checked),
        None => Verdict::pass(Vec::new(), checked),
    };

    let rep_of = |q: ClassId| {
        let r = qw.class(q).representative;
        vec![r.a, r.b]
    };
    let mut first: BTreeMap<ReillyElement, ClassId> = BTreeMap::new();
    let mut injective = None;
    for (q, &v) in images.iter().enumerate() {
        if let Some(&prev) = first.get(&v) {
            injective.get_or_insert_with(|| {
                let mut ce = rep_of(prev);
                ce.extend(rep_of(q));
                Witness::elements(ce)
            });
        } else {
            first.insert(v, q);
        }
    }
    let injective = match injective {
        Some(ce) => Verdict::fail(ce, qw.len() as u64),
        None => Verdict::pass(Vec::new(), qw.len() as u64),
    };

    let mut witnesses = Vec::new();
    let mut missing = Vec::new();
    let target_elements = ambient.window_elements(targets.bound);
    for &t in &target_elements {
        let idx = vec![t.m, t.g as u32, t.n];
        match first.get(&t) {
            Some(&q) => witnesses.push(Witness::new(idx, rep_of(q))),
            None => missing.push(Witness::new(idx, Vec::new())),
        }
    }
    let surjective = if missing.is_empty() {
        Verdict::pass(witnesses, target_elements.len() as u64)
    } else {
        let mut v = Verdict::fail(missing[0].clone(), target_elements.len() as u64)
            .with_limitation(format!(
                "no class inside window {} maps onto these elements",
                s.window().bound
            ));
        v.counterexamples = missing;
        v
    };

    let k = qw.len();
    let mut mult_ce = None;
    let (mut mult_checked, mut mult_skipped) = (0, 0);
    'outer: for q1 in 0..k {
        for q2 in 0..k {
            match qw.product(q1, q2) {
                Some(q3) => {
                    mult_checked += 1;
                    if ambient.multiply(images[q1], images[q2]) != images[q3] {
                        let mut ce = rep_of(q1);
                        ce.extend(rep_of(q2));
                        mult_ce = Some(Witness::elements(ce));
                        break 'outer;
                    }
                }
                None => mult_skipped += 1,
            }
        }
    }
    let multiplicative = match mult_ce {
        Some(ce) => Verdict::fail(ce, mult_checked),
        None => Verdict::pass(Vec::new(), mult_checked),
    }
    .with_skipped(mult_skipped);

    let inverse = match (0..k).find(|&q| images[invert_class(qw, q)] != ambient.invert(images[q])) {
        Some(q) => Verdict::fail(Witness::elements(rep_of(q)), k as u64),
        None => Verdict::pass(Vec::new(), k as u64),
    };

    let window_elements: BTreeSet<ReillyElement> = ambient
        .window_elements(s.window().bound)
        .into_iter()
        .collect();
    let image_set: BTreeSet<ReillyElement> = images.iter().copied().collect();
    let bijective_onto_window = injective.is_pass() && image_set == window_elements;

    Ok(ReferenceComparison {
        well_defined,
        injective,
        surjective,
        multiplicative,
        inverse,
        image_size: image_set.len(),
        window_size: window_elements.len(),
        bijective_onto_window,
        images,
    })
}
