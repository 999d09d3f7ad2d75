use std::fmt::Write as _;

use grich::lang_index::LanguageIndex;
use grich::palin::{complete_g_return_words, g_defect, g_lps};
use grich::symgraph::{rauzy_graph, symmetry_graph};
use serde::Serialize;

use crate::config::{AnalysisConfig, Format};
use crate::error::CliError;
use crate::{GraphKind, Output};

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Csv => "csv",
        Format::Dot => "dot",
        Format::Report => "report",
        Format::Json => "json",
    }
}

/// The requested format if the command supports it, else its first format.
pub fn pick_format(requested: Option<Format>, allowed: &[Format]) -> Result<Format, CliError> {
    match requested {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => {
            let names: Vec<&str> = allowed.iter().map(|&a| format_name(a)).collect();
            Err(CliError::Config(format!(
                "format {} is not available here (use {})",
                format_name(f),
                names.join(" or ")
            )))
        }
    }
}

pub fn json<T: Serialize>(value: &T) -> Result<Output, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Config(e.to_string()))?;
    s.push('\n');
    Ok(s.into())
}

pub fn word(cfg: &AnalysisConfig, format: Format) -> Result<Output, CliError> {
    let text = cfg.alphabet.render(&cfg.prefix()?);
    match format {
        Format::Json => json(&text),
        _ => Ok(format!("{text}\n").into()),
    }
}

#[derive(Serialize)]
struct GroupSummary {
    order: usize,
    abelian: bool,
    involutively_generated: bool,
    elements: Vec<String>,
    antimorphisms: Vec<String>,
    involutive_antimorphisms: Vec<String>,
    prefix_length: usize,
    n_max: usize,
    distinguishing: Vec<usize>,
    least_distinguishing: Option<usize>,
}

pub fn group(cfg: &AnalysisConfig, format: Format) -> Result<Output, CliError> {
    let g = &cfg.group;
    let index = LanguageIndex::build(cfg.prefix()?, cfg.n_max, None)?;
    let names = |ids: &mut dyn Iterator<Item = usize>| ids.map(|i| g.name(i).to_string()).collect::<Vec<_>>();
    let summary = GroupSummary {
        order: g.order(),
        abelian: g.is_abelian(),
        involutively_generated: g.is_involutively_generated(),
        elements: g.describe(&cfg.alphabet),
        antimorphisms: names(&mut g.antimorphisms()),
        involutive_antimorphisms: names(&mut g.involutive_antimorphisms().iter().copied()),
        prefix_length: cfg.prefix_length,
        n_max: cfg.n_max,
        distinguishing: (1..=cfg.n_max).filter(|&n| index.is_distinguishing(g, n)).collect(),
        least_distinguishing: index.distinguishing_threshold(g),
    };
    if format == Format::Json {
        return json(&summary);
    }
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut out = String::new();
    writeln!(out, "group: {}", cfg.group_id).unwrap();
    writeln!(out, "order: {}", summary.order).unwrap();
    writeln!(out, "abelian: {}", yes_no(summary.abelian)).unwrap();
    writeln!(out, "involutively generated: {}", yes_no(summary.involutively_generated)).unwrap();
    writeln!(out, "elements:").unwrap();
    for e in &summary.elements {
        writeln!(out, "  {e}").unwrap();
    }
    writeln!(out, "antimorphisms: {}", summary.antimorphisms.join(", ")).unwrap();
    writeln!(out, "involutive antimorphisms: {}", summary.involutive_antimorphisms.join(", ")).unwrap();
    match summary.least_distinguishing {
        Some(d) => writeln!(
            out,
            "least distinguishing length: {d} (prefix {}, n <= {})",
            cfg.prefix_length, cfg.n_max
        )
        .unwrap(),
        None => writeln!(out, "least distinguishing length: none up to {}", cfg.n_max).unwrap(),
    }
    Ok(out.into())
}

pub fn complexity(cfg: &AnalysisConfig, format: Format) -> Result<Output, CliError> {
    let index = LanguageIndex::build(cfg.prefix()?, cfg.n_max, None)?;
    let table = index.complexity(&cfg.group);
    match format {
        Format::Json => json(&table),
        _ => Ok(table.to_csv().into()),
    }
}

pub fn defect(cfg: &AnalysisConfig, format: Format) -> Result<Output, CliError> {
    let profile = g_defect(&cfg.group, &cfg.prefix()?)?;
    match format {
        Format::Json => json(&profile),
        _ => Ok(profile.to_csv_with(&cfg.alphabet).into()),
    }
}

pub fn returns(cfg: &AnalysisConfig, w: &str, format: Format) -> Result<Output, CliError> {
    let w = cfg.alphabet.parse(w).map_err(|e| CliError::Config(e.to_string()))?;
    if w.is_empty() {
        return Err(CliError::Config("returns needs a nonempty word".into()));
    }
    let text = cfg.prefix()?;
    let words: Vec<String> = complete_g_return_words(&cfg.group, &w, &text)?
        .iter()
        .map(|r| cfg.alphabet.render(r))
        .collect();
    match format {
        Format::Json => json(&words),
        _ => Ok(words.iter().map(|r| format!("{r}\n")).collect::<String>().into()),
    }
}

pub fn lps(cfg: &AnalysisConfig, prefix_len: usize, format: Format) -> Result<Output, CliError> {
    let text = cfg.word.prefix(prefix_len)?;
    let lps = cfg.alphabet.render(&g_lps(&cfg.group, &text)?);
    match format {
        Format::Json => json(&lps),
        _ if lps.is_empty() => Ok("ε\n".to_string().into()),
        _ => Ok(format!("{lps}\n").into()),
    }
}

pub fn graph(cfg: &AnalysisConfig, kind: GraphKind, n: usize, format: Format) -> Result<Output, CliError> {
    if n == 0 || n + 2 > cfg.prefix_length {
        return Err(CliError::Config(format!("--n must lie in 1..={}", cfg.prefix_length.saturating_sub(2))));
    }
    let index = LanguageIndex::build(cfg.prefix()?, n + 1, None)?;
    if kind == GraphKind::Rauzy {
        let r = rauzy_graph(&index, n)?;
        return match format {
            Format::Json => json(&r),
            _ => Ok(r.to_dot(&cfg.alphabet).into()),
        };
    }
    let sg = symmetry_graph(&cfg.group, &index, n)?;
    match (format, kind) {
        (Format::Json, _) => json(&sg),
        (_, GraphKind::SymDirected) => Ok(sg.directed_dot(&cfg.alphabet).into()),
        _ => Ok(sg.undirected_dot(&cfg.alphabet).into()),
    }
}

pub fn verify(cfg: &AnalysisConfig, format: Format) -> Result<Output, CliError> {
    let opts = grich::verify::VerifyOptions::new(cfg.prefix_length, cfg.n_max)
        .threshold(cfg.threshold)
        .ids(&cfg.word_id, &cfg.group_id);
    let report = grich::verify::verify(&cfg.group, &cfg.word, &opts)?;
    let mut out = match format {
        Format::Json => json(&report)?,
        _ => report.to_text().into(),
    };
    if !report.verdict.holds() {
        out.failure = Some(CliError::Refuted(report.verdict.to_string()));
    }
    Ok(out)
}
