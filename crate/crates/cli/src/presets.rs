//! Self-contained reproductions with embedded configs.

use std::fmt::Write as _;

use clap::ValueEnum;
use grich::lang_index::LanguageIndex;
use grich::palin::g_defect;
use grich::symgraph::{rauzy_graph, symmetry_graph};
use grich::verify::{repro_ex6, repro_ex8, subgroup_scan, IdentityCheck};

use crate::commands::{json, pick_format};
use crate::config::{AnalysisConfig, Format};
use crate::error::CliError;
use crate::{Cli, Output};

pub const FIBONACCI: &str = include_str!("../configs/fibonacci.toml");
pub const THUE_MORSE_DIHEDRAL: &str = include_str!("../configs/thue_morse_dihedral.toml");
pub const THUE_MORSE_REVERSAL: &str = include_str!("../configs/thue_morse_reversal.toml");
pub const T33_DIHEDRAL: &str = include_str!("../configs/t33_dihedral.toml");
pub const EIGHT_LETTER: &str = include_str!("../configs/eight_letter.toml");
pub const SIX_LETTER: &str = include_str!("../configs/six_letter.toml");

/// Prefix used by the table reproduction: rows n = 0..=19.
const TABLE_ROWS: usize = 19;
const FIGURE_ORDER: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Table1,
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Ex8,
    Ex6,
    Subgroups,
}

fn embedded(text: &str, name: &str) -> AnalysisConfig {
    AnalysisConfig::parse(text, name).expect("embedded configs are valid")
}

enum Drawing {
    Rauzy,
    Directed,
    Undirected,
}

fn figure(cfg: &AnalysisConfig, drawing: Drawing, format: Format) -> Result<Output, CliError> {
    let index = LanguageIndex::build(cfg.prefix()?, FIGURE_ORDER + 1, None)?;
    if let Drawing::Rauzy = drawing {
        let r = rauzy_graph(&index, FIGURE_ORDER)?;
        return if format == Format::Json { json(&r) } else { Ok(r.to_dot(&cfg.alphabet).into()) };
    }
    let g = symmetry_graph(&cfg.group, &index, FIGURE_ORDER)?;
    match (format, drawing) {
        (Format::Json, _) => json(&g),
        (_, Drawing::Directed) => Ok(g.directed_dot(&cfg.alphabet).into()),
        _ => Ok(g.undirected_dot(&cfg.alphabet).into()),
    }
}

fn check_line(out: &mut String, name: &str, c: &IdentityCheck) {
    let status = if c.holds() { "ok" } else { "FAILED" };
    write!(out, "{name}: {status} ({} checked, {} skipped)", c.checked, c.skipped).unwrap();
    if let Some(v) = &c.violation {
        write!(out, "; {v}").unwrap();
    }
    out.push('\n');
}

fn lengths(cli: &Cli, cfg: &AnalysisConfig) -> (usize, usize) {
    (cli.length.unwrap_or(cfg.prefix_length), cli.nmax.unwrap_or(cfg.n_max))
}

pub fn run(target: Target, cli: &Cli) -> Result<Output, CliError> {
    let figure_format = || pick_format(cli.format, &[Format::Dot, Format::Json]);
    let report_format = || pick_format(cli.format, &[Format::Report, Format::Json]);
    match target {
        Target::Table1 => {
            let format = pick_format(cli.format, &[Format::Csv, Format::Json])?;
            let cfg = embedded(THUE_MORSE_DIHEDRAL, "thue_morse_dihedral.toml");
            let profile = g_defect(&cfg.group, &cfg.word.prefix(TABLE_ROWS)?)?;
            match format {
                Format::Json => json(&profile),
                _ => Ok(profile.to_csv_with(&cfg.alphabet).into()),
            }
        }
        Target::Fig1 => figure(&embedded(FIBONACCI, "fibonacci.toml"), Drawing::Directed, figure_format()?),
        Target::Fig2 => figure(&embedded(FIBONACCI, "fibonacci.toml"), Drawing::Undirected, figure_format()?),
        Target::Fig3 => figure(&embedded(THUE_MORSE_DIHEDRAL, "thue_morse_dihedral.toml"), Drawing::Rauzy, figure_format()?),
        Target::Fig4 => {
            figure(&embedded(THUE_MORSE_DIHEDRAL, "thue_morse_dihedral.toml"), Drawing::Directed, figure_format()?)
        }
        Target::Fig5 => {
            figure(&embedded(THUE_MORSE_DIHEDRAL, "thue_morse_dihedral.toml"), Drawing::Undirected, figure_format()?)
        }
        Target::Fig6 => {
            figure(&embedded(THUE_MORSE_REVERSAL, "thue_morse_reversal.toml"), Drawing::Undirected, figure_format()?)
        }
        Target::Fig7 => figure(&embedded(T33_DIHEDRAL, "t33_dihedral.toml"), Drawing::Undirected, figure_format()?),
        Target::Ex8 => {
            let format = report_format()?;
            let (len, n_max) = lengths(cli, &embedded(EIGHT_LETTER, "eight_letter.toml"));
            let e = repro_ex8(len, n_max)?;
            let mut out = if format == Format::Json {
                json(&e)?
            } else {
                let mut s = e.richness.to_text();
                writeln!(s).unwrap();
                writeln!(s, "dC(1): {}", e.delta_c1).unwrap();
                writeln!(s, "G-palindromes of length 1: {}", e.palindromes_len1).unwrap();
                writeln!(s, "G-palindromes of length 2: {}", e.palindromes_len2).unwrap();
                let l2: Vec<String> = e.l2.iter().map(ToString::to_string).collect();
                writeln!(s, "factors of length 2: {}", l2.join(" ")).unwrap();
                check_line(&mut s, "bispecial shape", &e.bispecial_shape);
                check_line(&mut s, "pi recursion", &e.pi_recursion);
                check_line(&mut s, "commutation", &e.commutation);
                s.into()
            };
            if !e.all_ok() {
                out.failure = Some(CliError::Refuted("eight-letter example checks failed".into()));
            }
            Ok(out)
        }
        Target::Ex6 => {
            let format = report_format()?;
            let (len, n_max) = lengths(cli, &embedded(SIX_LETTER, "six_letter.toml"));
            let e = repro_ex6(len, n_max)?;
            let mut out = if format == Format::Json {
                json(&e)?
            } else {
                let mut s = e.richness.to_text();
                writeln!(s).unwrap();
                writeln!(s, "dC(1): {}, dC(2): {}", e.delta_c1, e.delta_c2).unwrap();
                for (name, p) in &e.pal {
                    writeln!(s, "P_{name}(1..=3): {} {} {}", p[0], p[1], p[2]).unwrap();
                }
                writeln!(s, "sum P(2): {}, sum P(3): {}", e.sum_p2, e.sum_p3).unwrap();
                check_line(&mut s, "palindrome lift", &e.palindrome_lift);
                check_line(&mut s, "bispecial correspondence", &e.bispecial_correspondence);
                for sub in e.subgroups.rich_proper() {
                    writeln!(s, "rich proper subgroup {{{}}}", sub.elements.join(", ")).unwrap();
                }
                s.into()
            };
            if !e.all_ok() {
                out.failure = Some(CliError::Refuted("six-letter example checks failed".into()));
            }
            Ok(out)
        }
        Target::Subgroups => {
            let format = report_format()?;
            let cfg = embedded(SIX_LETTER, "six_letter.toml");
            let (len, n_max) = lengths(cli, &cfg);
            let scan = subgroup_scan(&cfg.group, &cfg.word, len, n_max)?;
            let mut out = if format == Format::Json {
                json(&scan)?
            } else {
                let mut s = String::new();
                writeln!(s, "group {} of order {}: {}", cfg.group_id, scan.group_order, scan.group_verdict).unwrap();
                for e in &scan.entries {
                    let sums: Vec<String> = e.index_two_sums.iter().map(|(n, v)| format!("{n}:{v}")).collect();
                    let ok = match e.index_two_ok {
                        Some(true) => "index-two identity holds",
                        Some(false) => "index-two identity FAILS",
                        None => "index-two identity not applicable",
                    };
                    writeln!(s, "{{{}}} order {}: {}", e.elements.join(", "), e.order, e.verdict).unwrap();
                    if e.proper && e.verdict.holds() {
                        writeln!(s, "  {ok}; sums {}", sums.join(" ")).unwrap();
                    }
                }
                s.into()
            };
            if !scan.index_two_ok() {
                out.failure = Some(CliError::Refuted("index-two identity failed".into()));
            }
            Ok(out)
        }
    }
}
