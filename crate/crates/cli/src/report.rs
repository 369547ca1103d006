//! Analysis reports in plain text or `key=value` lines.

use std::fmt::Write as _;

use isg_core::bits::ElemSet;
use isg_core::faithfulness::{all_pair_conditions, is_continuous, is_e_star_unitary, kernel_pairs};
use isg_core::filters::{characters, ultrafilters, ultrafilter_characters};
use isg_core::regular::{RegularError, RegularRepresentation};
use isg_core::semigroup::{AlgebraError, InverseSemigroup};
use isg_core::semilattice::{LatticeError, TightMode, TightVerdict, TightnessOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Section {
    Validation,
    Idempotents,
    Order,
    Ultrafilters,
    TightCharacters,
    Regular,
    Continuity,
    Kernel,
    Theorem,
}

impl Section {
    pub const ALL: [Section; 9] = [
        Section::Validation,
        Section::Idempotents,
        Section::Order,
        Section::Ultrafilters,
        Section::TightCharacters,
        Section::Regular,
        Section::Continuity,
        Section::Kernel,
        Section::Theorem,
    ];

    fn title(self) -> &'static str {
        match self {
            Section::Validation => "validation",
            Section::Idempotents => "idempotents",
            Section::Order => "natural order",
            Section::Ultrafilters => "ultrafilters",
            Section::TightCharacters => "tight characters",
            Section::Regular => "regular representation",
            Section::Continuity => "continuity",
            Section::Kernel => "kernel pairs",
            Section::Theorem => "theorem checks",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Lines,
}

#[derive(Debug)]
pub enum ReportError {
    Algebra(AlgebraError),
    Lattice(LatticeError),
    Regular(RegularError),
}

impl From<AlgebraError> for ReportError {
    fn from(e: AlgebraError) -> Self {
        ReportError::Algebra(e)
    }
}

impl From<LatticeError> for ReportError {
    fn from(e: LatticeError) -> Self {
        ReportError::Lattice(e)
    }
}

impl From<RegularError> for ReportError {
    fn from(e: RegularError) -> Self {
        match e {
            RegularError::Algebra(e) => ReportError::Algebra(e),
            RegularError::Lattice(e) => ReportError::Lattice(e),
            other => ReportError::Regular(other),
        }
    }
}

/// One fact: a stable kind, ordered fields, and a sentence for the text form.
struct Record {
    kind: &'static str,
    fields: Vec<(&'static str, String)>,
    text: String,
}

pub struct Report {
    sections: Vec<(Section, Vec<Record>)>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for (section, records) in &self.sections {
            match format {
                Format::Text => {
                    writeln!(out, "== {} ==", section.title()).unwrap();
                    for r in records {
                        writeln!(out, "{}", r.text).unwrap();
                    }
                    out.push('\n');
                }
                Format::Lines => {
                    for r in records {
                        out.push_str(r.kind);
                        for (k, v) in &r.fields {
                            write!(out, " {k}={v}").unwrap();
                        }
                        out.push('\n');
                    }
                }
            }
        }
        out
    }
}

fn set(s: &InverseSemigroup, xs: &ElemSet) -> String {
    let labels: Vec<String> = xs.iter().map(|x| s.label(x)).collect();
    format!("{{{}}}", labels.join(","))
}

fn b(v: bool) -> String {
    v.to_string()
}

pub fn analyze(
    s: &InverseSemigroup,
    sections: &[Section],
    options: TightnessOptions,
) -> Result<Report, ReportError> {
    let mut out = Vec::new();
    let idem = s.idempotent_semilattice()?;
    let needs_regular = sections
        .iter()
        .any(|x| matches!(x, Section::Regular | Section::Kernel | Section::Theorem));
    let rep = if needs_regular { Some(RegularRepresentation::new(s)?) } else { None };
    let (continuous, continuity_witness) = is_continuous(s);

    for &section in sections {
        let mut rec = Vec::new();
        match section {
            Section::Validation => {
                let boolean = s.is_boolean_inverse_semigroup()?.is_boolean();
                rec.push(Record {
                    kind: "semigroup",
                    fields: vec![
                        ("name", s.name().unwrap_or("-").to_string()),
                        ("size", s.len().to_string()),
                        ("zero", s.zero().to_string()),
                        ("valid", b(true)),
                        ("boolean", b(boolean)),
                    ],
                    text: format!(
                        "{} is an inverse semigroup with zero {} and {} elements{}",
                        s.name().unwrap_or("input"),
                        s.label(s.zero()),
                        s.len(),
                        if boolean { "; it is a Boolean inverse semigroup" } else { "" }
                    ),
                });
                for x in s.elements() {
                    rec.push(Record {
                        kind: "element",
                        fields: vec![
                            ("index", x.to_string()),
                            ("label", s.label(x)),
                            ("inverse", s.label(s.inv(x))),
                            ("source", s.label(s.source(x))),
                            ("range", s.label(s.range(x))),
                        ],
                        text: format!(
                            "  {}: inverse {}, s*s = {}, ss* = {}",
                            s.label(x),
                            s.label(s.inv(x)),
                            s.label(s.source(x)),
                            s.label(s.range(x))
                        ),
                    });
                }
            }
            Section::Idempotents => {
                let all: ElemSet = idem.elements.iter().copied().collect();
                let ba = idem.lattice.boolean_structure();
                let atoms: ElemSet = idem.lattice.atoms().iter().map(|&a| idem.element(a)).collect();
                rec.push(Record {
                    kind: "idempotents",
                    fields: vec![
                        ("count", all.len().to_string()),
                        ("set", set(s, &all)),
                        ("atoms", set(s, &atoms)),
                        ("boolean_algebra", b(ba.is_some())),
                    ],
                    text: format!(
                        "E(S) = {} ({} elements), atoms {}, {}",
                        set(s, &all),
                        all.len(),
                        set(s, &atoms),
                        if ba.is_some() { "a Boolean algebra" } else { "not a Boolean algebra" }
                    ),
                });
            }
            Section::Order => {
                let mut count = 0;
                for t in s.elements() {
                    for x in s.down_set(t).iter().filter(|&x| x != t) {
                        count += 1;
                        rec.push(Record {
                            kind: "order",
                            fields: vec![("s", x.to_string()), ("t", t.to_string())],
                            text: format!("  {} < {}", s.label(x), s.label(t)),
                        });
                    }
                }
                rec.insert(
                    0,
                    Record {
                        kind: "order_pairs",
                        fields: vec![("count", count.to_string())],
                        text: format!("{count} strict inequalities s < t"),
                    },
                );
            }
            Section::Ultrafilters => {
                let us = ultrafilters(s);
                rec.push(Record {
                    kind: "ultrafilters",
                    fields: vec![("count", us.len().to_string())],
                    text: format!("{} ultrafilters", us.len()),
                });
                for (i, u) in us.iter().enumerate() {
                    let min = u.minimum(s).expect("finite filters are principal");
                    rec.push(Record {
                        kind: "ultrafilter",
                        fields: vec![
                            ("index", i.to_string()),
                            ("generator", s.label(min)),
                            ("members", set(s, &u.members())),
                        ],
                        text: format!("  xi{i} = up({}) = {}", s.label(min), set(s, &u.members())),
                    });
                }
            }
            Section::TightCharacters => {
                let e = &idem.lattice;
                let mode = match options.mode {
                    TightMode::Exhaustive => "exhaustive",
                    TightMode::Simplified => "simplified",
                };
                let infinite = ultrafilter_characters(e);
                let mut tight = Vec::new();
                let mut lines = Vec::new();
                for c in characters(e) {
                    let support: ElemSet = c.support().iter().map(|x| idem.element(x)).collect();
                    let verdict = c.as_representation(e).is_tight(options)?;
                    let name = match verdict {
                        TightVerdict::Tight => "tight",
                        TightVerdict::TightUpToCap { .. } => "tight-up-to-cap",
                        TightVerdict::NotTight(_) => "not-tight",
                    };
                    if verdict.is_tight() {
                        tight.push(c.clone());
                    }
                    lines.push(Record {
                        kind: "character",
                        fields: vec![
                            ("support", set(s, &support)),
                            ("verdict", name.to_string()),
                            ("ultrafilter", b(infinite.contains(&c))),
                        ],
                        text: format!("  phi on {}: {name}", set(s, &support)),
                    });
                }
                let equal = tight == infinite;
                rec.push(Record {
                    kind: "tight_characters",
                    fields: vec![
                        ("mode", mode.to_string()),
                        ("count", tight.len().to_string()),
                        ("ultrafilter_characters", infinite.len().to_string()),
                        ("equal", b(equal)),
                    ],
                    text: format!(
                        "{} tight characters ({mode} test), {} ultrafilter characters; the sets are {}",
                        tight.len(),
                        infinite.len(),
                        if equal { "equal" } else { "different" }
                    ),
                });
                rec.extend(lines);
            }
            Section::Regular => {
                let rep = rep.as_ref().expect("built above");
                let space = rep.space();
                let restriction = rep.idempotent_restriction();
                let verdict = match restriction.is_tight(options) {
                    Ok(v) => v,
                    Err(LatticeError::HypothesisUnverified) => rep.tightness().clone(),
                    Err(e) => return Err(e.into()),
                };
                rec.push(Record {
                    kind: "regular_representation",
                    fields: vec![
                        ("points", space.len().to_string()),
                        ("faithful", b(rep.is_faithful())),
                        ("tight", b(verdict.is_tight())),
                    ],
                    text: format!(
                        "lambda acts on {} ultrafilters; faithful: {}; idempotent restriction tight: {}",
                        space.len(),
                        rep.is_faithful(),
                        verdict.is_tight()
                    ),
                });
                for e in idem.elements.iter().copied() {
                    let omega = space.omega_e(e)?;
                    rec.push(Record {
                        kind: "omega",
                        fields: vec![("e", s.label(e)), ("points", omega.to_string())],
                        text: format!("  Omega_{} = {omega}", s.label(e)),
                    });
                }
                for x in s.elements() {
                    rec.push(Record {
                        kind: "lambda",
                        fields: vec![("s", x.to_string()), ("map", rep.lambda(x).to_string())],
                        text: format!("  lambda_{} = {}", s.label(x), rep.lambda(x)),
                    });
                }
            }
            Section::Continuity => {
                let mut fields = vec![("continuous", b(continuous))];
                let mut text = format!("continuous: {continuous}");
                if let Some((a, c)) = continuity_witness {
                    fields.push(("witness_s", a.to_string()));
                    fields.push(("witness_t", c.to_string()));
                    write!(text, " ({} and {} coincide essentially)", s.label(a), s.label(c)).unwrap();
                }
                rec.push(Record {
                    kind: "continuity",
                    fields,
                    text,
                });
                let (unitary, witness) = is_e_star_unitary(s);
                let mut fields = vec![("value", b(unitary))];
                let mut text = format!("E*-unitary: {unitary}");
                if let Some((a, e)) = witness {
                    fields.push(("witness_s", a.to_string()));
                    fields.push(("witness_e", e.to_string()));
                    write!(text, " ({}{} = {} with {} not idempotent)", s.label(a), s.label(e), s.label(e), s.label(a))
                        .unwrap();
                }
                rec.push(Record {
                    kind: "e_star_unitary",
                    fields,
                    text,
                });
            }
            Section::Kernel => {
                let report = kernel_pairs(rep.as_ref().expect("built above"));
                rec.push(Record {
                    kind: "kernel",
                    fields: vec![("pairs", report.pairs.len().to_string())],
                    text: format!("{} pairs s != t with lambda_s = lambda_t", report.pairs.len()),
                });
                for c in &report.pairs {
                    rec.push(Record {
                        kind: "kernel_pair",
                        fields: vec![
                            ("s", c.s.to_string()),
                            ("t", c.t.to_string()),
                            ("cond_ii", b(c.cond_ii)),
                            ("cond_iii", b(c.cond_iii)),
                            ("cond_iv", b(c.cond_iv)),
                            ("equivalent", b(c.equivalent)),
                            ("s_label", s.label(c.s)),
                            ("t_label", s.label(c.t)),
                        ],
                        text: format!(
                            "  ({}, {}): (ii) {}, (iii) {}, (iv) {}, essentially coincide: {}",
                            s.label(c.s),
                            s.label(c.t),
                            c.cond_ii,
                            c.cond_iii,
                            c.cond_iv,
                            c.equivalent
                        ),
                    });
                }
            }
            Section::Theorem => {
                let all = all_pair_conditions(rep.as_ref().expect("built above"));
                let ii_iii = all.iter().filter(|c| c.cond_ii != c.cond_iii).count();
                let ii_iv = all.iter().filter(|c| c.cond_ii != c.cond_iv).count();
                rec.push(Record {
                    kind: "theorem",
                    fields: vec![
                        ("continuous", b(continuous)),
                        ("pairs", all.len().to_string()),
                        ("ii_iii_mismatches", ii_iii.to_string()),
                        ("ii_iv_mismatches", ii_iv.to_string()),
                        ("cond_i", if continuous { "equals_ii" } else { "unknown" }.to_string()),
                    ],
                    text: format!(
                        "{} ordered pairs; (ii) vs (iii) differ on {ii_iii}, (ii) vs (iv) on {ii_iv}; {}",
                        all.len(),
                        if continuous {
                            "continuous, so (i) agrees with (ii)"
                        } else {
                            "not continuous, (i) is not decided"
                        }
                    ),
                });
            }
        }
        out.push((section, rec));
    }
    Ok(Report { sections: out })
}

pub fn tightness_options(mode: TightMode, cover_cap: Option<usize>) -> TightnessOptions {
    TightnessOptions { mode, cover_cap }
}
