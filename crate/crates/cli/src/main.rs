use clap::{Parser, Subcommand, ValueEnum};
use immersed_morse_cli::doc::{self, CatalogDoc, EntryDoc, SCHEMA_VERSION};
use immersed_morse_cli::dot;
use immersed_morse::catalog::{
    build_single_curve_catalog, build_two_curve_catalog, cross_validate, enumerate_structures,
    structure_canonical, validate_structure, CatalogEntry, MERIDIAN_NOTE,
};
use immersed_morse::reeb::{enumerate_optimal_reeb, reeb_canonical, ReebGraph};
use immersed_morse::strata::{
    closure_surface, enumerate_pairings, enumerate_trees, feasible_stratifications,
    min_critical_points, tree_canonical, ColoredTree, Tree,
};
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

/// Catalog Morse functions with four critical points on self-crossing spheres.
#[derive(Parser)]
#[command(name = "immersed-morse", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the equivalence classes of structures with a given number of
    /// double curves
    Classify {
        /// How many double curves the surface carries (1 or 2)
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        double_curves: u8,
        /// Total number of critical points to place
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(2..=6))]
        budget: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Emit a DOT diagram of a tree, a level graph, or a full structure
    Render {
        #[arg(long, value_enum)]
        target: RenderTarget,
        /// Alias (T1, T2-B, torus, genus2-1, ...), case label, or canonical key
        #[arg(long)]
        id: String,
        /// Output file; relative paths land under IMMERSED_MORSE_OUT_DIR when set
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-derive the catalogs, cross-check them against a blind search, and
    /// print a deterministic report
    Check,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderTarget {
    Tree,
    Reeb,
    Structure,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Classify { double_curves, budget, format } => {
            cmd_classify(double_curves as usize, budget, format)
        }
        Command::Render { target, id, out } => cmd_render(target, &id, out),
        Command::Check => cmd_check(),
    };
    ExitCode::from(code)
}

/// All colorings (feasible or not) with the given number of double curves,
/// in enumeration order. One curve pairs up a 2-edge tree, two curves a
/// 4-edge tree.
fn colorings_with(curves: usize) -> Vec<ColoredTree> {
    let mut out = Vec::new();
    for t in enumerate_trees(curves * 2).expect("2 and 4 edges are in range") {
        out.extend(enumerate_pairings(&t).expect("even edge count"));
    }
    out
}

fn table_entries(curves: usize) -> Vec<CatalogEntry> {
    if curves == 1 {
        build_single_curve_catalog()
    } else {
        build_two_curve_catalog()
    }
}

fn catalog_doc(curves: usize, budget: u32, verified: bool, entries: &[CatalogEntry]) -> CatalogDoc {
    let feasible = feasible_stratifications(budget);
    CatalogDoc {
        version: SCHEMA_VERSION.to_string(),
        budget,
        double_curves: curves,
        verified,
        stratifications: colorings_with(curves)
            .iter()
            .map(|ct| {
                let ok = feasible.iter().any(|f| f.canonical_key() == ct.canonical_key());
                doc::stratification_doc(ct, budget, ok)
            })
            .collect(),
        entries: entries
            .iter()
            .map(|e| EntryDoc {
                case_label: e.case_label.clone(),
                key: e.key.clone(),
                structure: doc::structure_doc(&e.structure),
            })
            .collect(),
    }
}

fn cmd_classify(curves: usize, budget: u32, format: OutputFormat) -> u8 {
    let verified = budget == 4;
    let entries: Vec<CatalogEntry> = if verified {
        let report = cross_validate(4);
        if !report.pass {
            eprintln!("cross-check failed: the case tables and the blind search disagree");
            for r in &report.reports {
                for k in &r.missing_in_search {
                    eprintln!("  {}: in the tables but not found by search: {k}", r.stratification);
                }
                for k in &r.unexpected_in_search {
                    eprintln!("  {}: found by search but absent from the tables: {k}", r.stratification);
                }
            }
            return 1;
        }
        table_entries(curves)
    } else {
        let mut out = Vec::new();
        for ct in feasible_stratifications(budget) {
            if ct.curve_count() != curves {
                continue;
            }
            let strat = ct.canonical_key();
            for (i, s) in enumerate_structures(&ct, budget).into_iter().enumerate() {
                out.push(CatalogEntry {
                    key: structure_canonical(&s),
                    case_label: format!("search/{strat}/{i:02}"),
                    structure: s,
                });
            }
        }
        out
    };

    match format {
        OutputFormat::Json => {
            let doc = catalog_doc(curves, budget, verified, &entries);
            println!("{}", serde_json::to_string_pretty(&doc).expect("document serializes"));
        }
        OutputFormat::Text => {
            println!("double curves: {curves}");
            println!("critical points: {budget}");
            if verified {
                println!("verified: yes (tables and blind search agree key for key)");
            } else {
                println!("verified: no (exploratory budget; tables exist only for four points)");
            }
            for (i, e) in entries.iter().enumerate() {
                println!("{:>3}. {}", i + 1, e.case_label);
                println!("     {}", e.key);
            }
            println!("total: {}", entries.len());
        }
    }
    0
}

fn genus_sum(ct: &ColoredTree) -> u32 {
    (0..ct.tree().vertex_count())
        .map(|v| closure_surface(ct, v as u8).expect("in range").genus)
        .sum()
}

fn max_degree(t: &Tree) -> usize {
    (0..t.vertex_count()).map(|v| t.degree(v as u8)).max().unwrap_or(0)
}

/// T0 is the 2-edge path; T1, T2, T3 are the star, spider, and chain over
/// four edges, told apart by their largest vertex degree.
fn tree_by_alias(id: &str) -> Option<Tree> {
    let want = match id {
        "T0" => return enumerate_trees(2).expect("in range").pop(),
        "T1" => 4,
        "T2" => 3,
        "T3" => 2,
        _ => return None,
    };
    enumerate_trees(4).expect("in range").into_iter().find(|t| max_degree(t) == want)
}

/// `T2-A` style aliases pick a pairing of the aliased tree by how much genus
/// its closed-up pieces carry in total; `single-curve` is the lone pairing
/// of T0. Letters follow the catalog's case tables: A always closes up the
/// most handles, and for the chain B closes up none while C closes one.
fn coloring_by_alias(id: &str) -> Option<ColoredTree> {
    let (tree_id, want_genus) = match id {
        "single-curve" | "T0-A" => ("T0", 1),
        "T1-A" => ("T1", 2),
        "T2-A" => ("T2", 2),
        "T2-B" => ("T2", 1),
        "T3-A" => ("T3", 2),
        "T3-B" => ("T3", 0),
        "T3-C" => ("T3", 1),
        _ => return None,
    };
    let t = tree_by_alias(tree_id)?;
    enumerate_pairings(&t).ok()?.into_iter().find(|ct| genus_sum(ct) == want_genus)
}

fn render_tree(id: &str) -> Option<String> {
    if let Some(t) = tree_by_alias(id) {
        return Some(dot::tree_dot(&t, id));
    }
    if let Some(ct) = coloring_by_alias(id) {
        return Some(dot::colored_tree_dot(&ct, id));
    }
    // fall back to canonical keys, plain or colored
    for n in [2usize, 4] {
        for t in enumerate_trees(n).expect("in range") {
            if tree_canonical(&t) == id {
                return Some(dot::tree_dot(&t, id));
            }
            for ct in enumerate_pairings(&t).expect("even edge count") {
                if ct.canonical_key() == id {
                    return Some(dot::colored_tree_dot(&ct, id));
                }
            }
        }
    }
    None
}

fn render_reeb(id: &str) -> Option<String> {
    let by_index = |genus: u32, i: usize| -> Option<ReebGraph> {
        enumerate_optimal_reeb(genus).ok()?.into_iter().nth(i)
    };
    let r = match id {
        "sphere" => by_index(0, 0),
        "torus" => by_index(1, 0),
        key if key.starts_with("rg:") => (0..=3).find_map(|g| {
            enumerate_optimal_reeb(g)
                .expect("genus in range")
                .into_iter()
                .find(|r| reeb_canonical(r).is_ok_and(|k| k == key))
        }),
        alias => {
            let rest = alias.strip_prefix("genus")?;
            let (g, i) = match rest.split_once('-') {
                Some((g, i)) => (g.parse().ok()?, i.parse().ok()?),
                None => (rest.parse().ok()?, 0),
            };
            by_index(g, i)
        }
    }?;
    Some(dot::reeb_dot(&r, id))
}

fn render_structure(id: &str) -> Option<String> {
    build_single_curve_catalog()
        .into_iter()
        .chain(build_two_curve_catalog())
        .find(|e| e.case_label == id || e.key == id)
        .map(|e| dot::structure_dot(&e.structure, &e.case_label))
}

fn out_path(p: PathBuf) -> PathBuf {
    if p.is_relative() {
        if let Ok(base) = std::env::var("IMMERSED_MORSE_OUT_DIR") {
            if !base.is_empty() {
                return PathBuf::from(base).join(p);
            }
        }
    }
    p
}

fn cmd_render(target: RenderTarget, id: &str, out: Option<PathBuf>) -> u8 {
    let text = match target {
        RenderTarget::Tree => render_tree(id),
        RenderTarget::Reeb => render_reeb(id),
        RenderTarget::Structure => render_structure(id),
    };
    let Some(text) = text else {
        eprintln!("unknown id: {id}");
        return 1;
    };
    match out {
        None => print!("{text}"),
        Some(p) => {
            let path = out_path(p);
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                let _ = std::fs::create_dir_all(dir);
            }
            if let Err(e) = std::fs::write(&path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return 1;
            }
        }
    }
    0
}

fn round_trips(curves: usize) -> bool {
    let entries = table_entries(curves);
    let before = catalog_doc(curves, 4, true, &entries);
    let Ok(json) = serde_json::to_string(&before) else { return false };
    let Ok(after) = serde_json::from_str::<CatalogDoc>(&json) else { return false };
    if after != before {
        return false;
    }
    after.entries.iter().all(|e| match doc::structure_from_doc(&e.structure) {
        Ok(s) => validate_structure(&s).is_empty() && structure_canonical(&s) == e.key,
        Err(_) => false,
    })
}

fn cmd_check() -> u8 {
    let mut checks: Vec<(String, bool)> = Vec::new();

    let census: Vec<usize> = (1..=4)
        .map(|n| enumerate_trees(n).expect("in range").len())
        .collect();
    checks.push(("tree census over 1..=4 edges is 1, 1, 2, 3".into(), census == [1, 1, 2, 3]));

    let mut pairing_counts: Vec<(usize, usize)> = enumerate_trees(4)
        .expect("in range")
        .iter()
        .map(|t| (max_degree(t), enumerate_pairings(t).expect("even").len()))
        .collect();
    pairing_counts.sort();
    checks.push((
        "pairing counts are 3 on the chain, 2 on the spider, 1 on the star".into(),
        pairing_counts == [(2, 3), (3, 2), (4, 1)],
    ));

    let reeb_counts: Vec<usize> = (0..=2)
        .map(|g| enumerate_optimal_reeb(g).expect("in range").len())
        .collect();
    checks.push((
        "optimal level graphs per genus 0, 1, 2 number 1, 1, 3".into(),
        reeb_counts == [1, 1, 3],
    ));

    let mut mins: Vec<u32> = colorings_with(1)
        .iter()
        .chain(colorings_with(2).iter())
        .map(min_critical_points)
        .collect();
    mins.sort();
    checks.push((
        "minimal point counts across all colorings are 4,4,4,6,6,6,8".into(),
        mins == [4, 4, 4, 6, 6, 6, 8],
    ));
    checks.push((
        "exactly 3 colorings admit four critical points".into(),
        feasible_stratifications(4).len() == 3,
    ));

    let singles = build_single_curve_catalog();
    let twos = build_two_curve_catalog();
    checks.push((format!("single-curve catalog {}/13", singles.len()), singles.len() == 13));
    checks.push((format!("two-curve catalog {}/11", twos.len()), twos.len() == 11));

    let mut keys: Vec<&String> = singles.iter().chain(&twos).map(|e| &e.key).collect();
    keys.sort();
    keys.dedup();
    checks.push((
        "all 24 canonical keys are pairwise distinct".into(),
        keys.len() == singles.len() + twos.len(),
    ));
    checks.push((
        "every table entry passes structural validation".into(),
        singles.iter().chain(&twos).all(|e| validate_structure(&e.structure).is_empty()),
    ));
    checks.push((
        "catalog JSON round-trips losslessly with keys intact".into(),
        round_trips(1) && round_trips(2),
    ));

    let cross = cross_validate(4);
    checks.push((
        "blind search at four points reproduces the tables key for key".into(),
        cross.pass,
    ));

    let mut report = String::new();
    let mut all = true;
    for (name, pass) in &checks {
        all &= pass;
        let _ = writeln!(report, "check: {name} — {}", if *pass { "ok" } else { "FAILED" });
    }
    let _ = writeln!(report, "{MERIDIAN_NOTE}");
    let _ = writeln!(report, "{}", if all { "all checks passed" } else { "some checks FAILED" });
    print!("{report}");
    u8::from(!all)
}
