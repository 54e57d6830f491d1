mod args;
mod cache;
mod error;
mod oeis;

use std::io::Write;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Map, Value};

use fishburn_core::algebra::{gf_names, gf_takes_k, named_gf, SparsePoly};
use fishburn_core::bijection::{active_sites, g_inverse, g_map};
use fishburn_core::enumerate::{
    count_class_with, count_seq_class, identified_1423, label_distribution_with, label_of, poly_class_with, Base,
    ClassSpec, Parallelism, SeqClassSpec, SeqKind, Stats, Tree,
};
use fishburn_core::verify::{find_check, list_checks, run_all, run_check, CheckResult, Status};
use fishburn_core::{IntSequence, Permutation};

use args::{BaseArg, ClassArgs, Cli, Command, Format, Global, KindArg, Lengths};
use cache::Cache;
use error::CliError;

struct Session {
    global: Global,
    cache: Option<Cache>,
    out: Vec<String>,
}

impl Session {
    fn new(global: Global) -> Self {
        let cache = if global.no_cache {
            None
        } else {
            cache::default_path(global.cache.as_deref()).map(Cache::open)
        };
        Self { global, cache, out: Vec::new() }
    }

    fn par(&self) -> Parallelism {
        if self.global.threads > 1 {
            Parallelism::new(self.global.threads, self.global.split_depth)
        } else {
            Parallelism::default()
        }
    }

    fn csv(&self) -> bool {
        self.global.format == Format::Csv
    }

    fn json_only(&self, command: &str) -> Result<(), CliError> {
        if self.csv() {
            return Err(CliError::Usage(format!("{command} supports --format json only")));
        }
        Ok(())
    }

    fn record(&mut self, mut fields: Map<String, Value>, started: Instant) {
        if !self.global.no_timing {
            let ms = started.elapsed().as_secs_f64() * 1000.0;
            fields.insert("elapsed_ms".into(), json!((ms * 1000.0).round() / 1000.0));
        }
        self.out.push(Value::Object(fields).to_string());
    }

    /// Looks `key` up at length `n`, computing and storing it on a miss.
    fn cached(
        &mut self,
        key: &str,
        n: usize,
        compute: impl FnOnce() -> Result<Value, CliError>,
    ) -> Result<(Value, &'static str), CliError> {
        let Some(cache) = self.cache.as_mut() else {
            return Ok((compute()?, "off"));
        };
        if let Some(v) = cache.get(key, n) {
            return Ok((v.clone(), "hit"));
        }
        let v = compute()?;
        cache.put(key, n, v.clone());
        Ok((v, "miss"))
    }
}

fn usage(what: &str, token: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("invalid {what} `{token}`: {e}"))
}

fn tokens(list: &str) -> impl Iterator<Item = &str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_perm(text: &str) -> Result<Permutation, CliError> {
    text.parse().map_err(|e| usage("permutation", text, e))
}

fn parse_seq(text: &str) -> Result<IntSequence, CliError> {
    text.parse().map_err(|e| usage("sequence", text, e))
}

fn parse_tree(text: &str) -> Result<Tree, CliError> {
    text.parse().map_err(|e| usage("tree", text, e))
}

fn class_spec(args: &ClassArgs) -> Result<ClassSpec, CliError> {
    let mut avoid = Vec::new();
    for tok in tokens(&args.avoid) {
        if tok.eq_ignore_ascii_case("f") {
            return Err(CliError::Usage(
                "pattern `f` cannot be given to --avoid; select Fishburn permutations with --base fishburn".into(),
            ));
        }
        avoid.push(tok.parse::<Permutation>().map_err(|e| usage("pattern", tok, e))?);
    }
    let base = match args.base {
        BaseArg::All => Base::All,
        BaseArg::Fishburn => Base::Fishburn,
    };
    ClassSpec::new(base, avoid, args.indecomposable).map_err(|e| CliError::Usage(e.to_string()))
}

fn lengths(l: &Lengths) -> Result<Vec<usize>, CliError> {
    match (l.n, &l.n_range) {
        (Some(n), _) => Ok(vec![n]),
        (None, Some(range)) => {
            let (a, b) = range
                .split_once("..=")
                .or_else(|| range.split_once(".."))
                .ok_or_else(|| usage("range", range, "expected A..B"))?;
            let a: usize = a.trim().parse().map_err(|e| usage("range", range, e))?;
            let b: usize = b.trim().parse().map_err(|e| usage("range", range, e))?;
            if a > b {
                return Err(usage("range", range, "start exceeds end"));
            }
            Ok((a..=b).collect())
        }
        (None, None) => Err(CliError::Usage("give --n N or --n-range A..B".into())),
    }
}

/// Terms sorted by exponent vector, coefficients as decimal strings.
fn poly_json(p: &SparsePoly) -> Value {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort();
    Value::Array(
        terms
            .into_iter()
            .map(|(e, c)| json!({"q": e[0], "t": e[1], "r": e[2], "coeff": c.to_string()}))
            .collect(),
    )
}

fn poly_csv_rows(prefix: &str, terms: &Value) -> Vec<String> {
    terms
        .as_array()
        .into_iter()
        .flatten()
        .map(|t| format!("{prefix}{},{},{},{}", t["q"], t["t"], t["r"], t["coeff"].as_str().unwrap_or("")))
        .collect()
}

fn fields(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn cmd_count(s: &mut Session, class: &ClassArgs, l: &Lengths) -> Result<(), CliError> {
    let spec = class_spec(class)?;
    let par = s.par();
    if s.csv() {
        s.out.push("n,count".into());
    }
    for n in lengths(l)? {
        let started = Instant::now();
        let (v, status) = s.cached(&format!("count|{spec}"), n, || {
            Ok(Value::String(count_class_with(&spec, n, par)?.to_string()))
        })?;
        if s.csv() {
            s.out.push(format!("{n},{}", v.as_str().unwrap_or("")));
        } else {
            let f = fields(vec![
                ("command", json!("count")),
                ("spec", json!(spec.to_string())),
                ("n", json!(n)),
                ("count", v),
                ("cache", json!(status)),
            ]);
            s.record(f, started);
        }
    }
    Ok(())
}

fn cmd_seqcount(s: &mut Session, kind: KindArg, avoid: &str, l: &Lengths) -> Result<(), CliError> {
    let kind = match kind {
        KindArg::Ascent => SeqKind::Ascent,
        KindArg::Binary => SeqKind::Binary,
    };
    let pats = tokens(avoid).map(parse_seq).collect::<Result<Vec<_>, _>>()?;
    let spec = SeqClassSpec::new(kind, pats).map_err(|e| CliError::Usage(e.to_string()))?;
    if s.csv() {
        s.out.push("n,count".into());
    }
    for n in lengths(l)? {
        let started = Instant::now();
        let (v, status) = s.cached(&format!("seq|{spec}"), n, || {
            Ok(Value::String(count_seq_class(&spec, n)?.to_string()))
        })?;
        if s.csv() {
            s.out.push(format!("{n},{}", v.as_str().unwrap_or("")));
        } else {
            let f = fields(vec![
                ("command", json!("seqcount")),
                ("spec", json!(spec.to_string())),
                ("n", json!(n)),
                ("count", v),
                ("cache", json!(status)),
            ]);
            s.record(f, started);
        }
    }
    Ok(())
}

fn cmd_poly(
    s: &mut Session,
    class: &ClassArgs,
    l: &Lengths,
    stats: &str,
    label_split: bool,
    tree: Option<&str>,
) -> Result<(), CliError> {
    let stats = Stats::parse(stats).map_err(|e| usage("statistics", stats, e))?;
    let tree = tree.map(parse_tree).transpose()?;
    let spec = match tree {
        Some(t) => {
            let given = class_spec(class)?;
            let default = ClassSpec::new(Base::Fishburn, Vec::new(), false)?;
            if given != default && given != t.class() {
                return Err(CliError::Usage(format!("--tree {t} enumerates {}, not {given}", t.class())));
            }
            t.class()
        }
        None => class_spec(class)?,
    };
    let par = s.par();
    if s.csv() {
        s.out.push(if label_split { "n,label,q,t,r,coeff" } else { "n,q,t,r,coeff" }.into());
    }
    for n in lengths(l)? {
        let started = Instant::now();
        let mut f = fields(vec![
            ("command", json!("poly")),
            ("spec", json!(spec.to_string())),
            ("n", json!(n)),
            ("stats", json!(stats.to_string())),
        ]);
        let (v, status) = match (label_split, tree) {
            (true, Some(t)) => s.cached(&format!("labels|{t}|{stats}"), n, || {
                let d = label_distribution_with(t, n, stats, par)?;
                Ok(Value::Array(
                    d.iter()
                        .map(|(label, p)| json!({"label": label.to_string(), "poly": poly_json(p)}))
                        .collect(),
                ))
            })?,
            _ => s.cached(&format!("poly|{spec}|{stats}"), n, || {
                Ok(poly_json(&poly_class_with(&spec, n, stats, par)?))
            })?,
        };
        if s.csv() {
            if label_split {
                for entry in v.as_array().into_iter().flatten() {
                    let prefix = format!("{n},{},", entry["label"].as_str().unwrap_or(""));
                    s.out.extend(poly_csv_rows(&prefix, &entry["poly"]));
                }
            } else {
                s.out.extend(poly_csv_rows(&format!("{n},"), &v));
            }
            continue;
        }
        f.insert((if label_split { "labels" } else { "poly" }).into(), v);
        f.insert("cache".into(), json!(status));
        s.record(f, started);
    }
    Ok(())
}

fn cmd_gmap(s: &mut Session, perm: Option<&str>, seq: Option<&str>) -> Result<(), CliError> {
    s.json_only("gmap")?;
    let started = Instant::now();
    let f = match (perm, seq) {
        (Some(w), _) => {
            let p = parse_perm(w)?;
            fields(vec![("command", json!("gmap")), ("perm", json!(p.to_string())), ("seq", json!(g_map(&p)?.to_string()))])
        }
        (None, Some(w)) => {
            let a = parse_seq(w)?;
            fields(vec![("command", json!("gmap")), ("seq", json!(a.to_string())), ("perm", json!(g_inverse(&a)?.to_string()))])
        }
        (None, None) => return Err(CliError::Usage("give --perm W or --inverse --seq W".into())),
    };
    s.record(f, started);
    Ok(())
}

fn cmd_activesites(s: &mut Session, perm: &str) -> Result<(), CliError> {
    s.json_only("activesites")?;
    let started = Instant::now();
    let p = parse_perm(perm)?;
    let sites = active_sites(&p)?;
    s.record(
        fields(vec![("command", json!("activesites")), ("perm", json!(p.to_string())), ("sites", json!(sites))]),
        started,
    );
    Ok(())
}

fn cmd_label(s: &mut Session, tree: &str, perm: &str) -> Result<(), CliError> {
    s.json_only("label")?;
    let started = Instant::now();
    let tree = parse_tree(tree)?;
    let p = parse_perm(perm)?;
    let label = label_of(tree, &p)?;
    let mut f = fields(vec![
        ("command", json!("label")),
        ("tree", json!(tree.to_string())),
        ("perm", json!(p.to_string())),
        ("label", json!(label.to_string())),
    ]);
    if let Some(id) = identified_1423(label) {
        f.insert("identified".into(), json!(id));
    }
    s.record(f, started);
    Ok(())
}

fn parse_at(text: &str) -> Result<[Option<i64>; 3], CliError> {
    let mut at = [None; 3];
    for tok in tokens(text) {
        let (var, val) = tok.split_once('=').ok_or_else(|| usage("substitution", tok, "expected VAR=VALUE"))?;
        let slot = match var.trim() {
            "q" => 0,
            "t" => 1,
            "r" => 2,
            other => return Err(usage("substitution", tok, format!("unknown variable {other}"))),
        };
        at[slot] = Some(val.trim().parse().map_err(|e| usage("substitution", tok, e))?);
    }
    Ok(at)
}

fn cmd_series(
    s: &mut Session,
    gf: Option<&str>,
    k: Option<i64>,
    order: usize,
    at: Option<&str>,
    list: bool,
) -> Result<(), CliError> {
    if list {
        s.json_only("series --list")?;
        for name in gf_names() {
            let takes_k = gf_takes_k(name).unwrap_or(false);
            s.out.push(json!({"gf": name, "takes_k": takes_k}).to_string());
        }
        return Ok(());
    }
    let name = gf.ok_or_else(|| CliError::Usage("give --gf NAME or --list".into()))?;
    let started = Instant::now();
    let mut g = named_gf(name, k).map_err(|e| CliError::Usage(e.to_string()))?;
    let at = at.map(parse_at).transpose()?;
    if let Some([q, t, r]) = at {
        g = g.substitute(q, t, r)?;
    }
    let series = g.expand(order)?;
    if s.csv() {
        s.out.push("n,q,t,r,coeff".into());
    }
    for j in 0..=order {
        let terms = poly_json(series.coeff(j));
        if s.csv() {
            s.out.extend(poly_csv_rows(&format!("{j},"), &terms));
            continue;
        }
        let mut f = fields(vec![("command", json!("series")), ("gf", json!(name)), ("n", json!(j)), ("coeff", terms)]);
        if let Some(k) = k {
            f.insert("k".into(), json!(k));
        }
        if let Some(a) = at {
            let names = ["q", "t", "r"];
            let sub: Map<String, Value> =
                a.iter().zip(names).filter_map(|(v, n)| v.map(|v| (n.to_string(), json!(v)))).collect();
            f.insert("at".into(), Value::Object(sub));
        }
        s.record(f, started);
    }
    Ok(())
}

fn check_json(r: &CheckResult, no_timing: bool) -> Value {
    let mut f = fields(vec![
        ("command", json!("verify")),
        ("id", json!(r.id)),
        ("kind", json!(r.kind.to_string())),
        ("n_min", json!(r.n_min)),
        ("n_max", json!(r.n_max)),
        ("comparisons", json!(r.comparisons)),
        ("notes", json!(r.notes)),
    ]);
    match &r.status {
        Status::AllEqual => {
            f.insert("status".into(), json!("all-equal"));
        }
        Status::FirstMismatch { n, item, values } => {
            f.insert("status".into(), json!("mismatch"));
            let vals: Map<String, Value> = values.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect();
            f.insert("first_mismatch".into(), json!({"n": n, "item": item, "values": vals}));
        }
    }
    if !no_timing {
        f.insert("elapsed_ms".into(), json!((r.elapsed.as_secs_f64() * 1e6).round() / 1000.0));
    }
    Value::Object(f)
}

fn cmd_verify(s: &mut Session, check: Option<&str>, all: bool, list: bool, n_max: Option<usize>) -> Result<(), CliError> {
    s.json_only("verify")?;
    if list {
        for c in list_checks() {
            s.out.push(
                json!({"id": c.id, "kind": c.kind.to_string(), "min_n": c.min_n, "default_n_max": c.default_n_max, "statement": c.statement})
                    .to_string(),
            );
        }
        return Ok(());
    }
    let threads = s.global.threads;
    let results = match (check, all) {
        (Some(id), _) => {
            let spec = find_check(id).map_err(|e| CliError::Usage(e.to_string()))?;
            vec![run_check(id, n_max.unwrap_or(spec.default_n_max), threads)?]
        }
        (None, true) => run_all(n_max, threads),
        (None, false) => return Err(CliError::Usage("give --check ID, --all or --list".into())),
    };
    let failed = results.iter().filter(|r| !r.passed()).count();
    for r in &results {
        s.out.push(check_json(r, s.global.no_timing).to_string());
    }
    if failed > 0 {
        return Err(CliError::Mismatch(failed));
    }
    Ok(())
}

fn cmd_oeis(s: &mut Session, terms: &str, offline: Option<Option<&std::path::Path>>) -> Result<(), CliError> {
    s.json_only("oeis")?;
    let started = Instant::now();
    let terms = oeis::parse_terms(terms)?;
    let (matches, mode) = match offline {
        Some(path) => (oeis::lookup_offline(path, &terms)?, "offline"),
        None => (oeis::lookup_online(&terms)?, "online"),
    };
    let shown: Vec<String> = terms.iter().map(|t| t.to_string()).collect();
    s.record(
        fields(vec![("command", json!("oeis")), ("terms", json!(shown)), ("mode", json!(mode)), ("matches", json!(matches))]),
        started,
    );
    Ok(())
}

fn dispatch(s: &mut Session, command: &Command) -> Result<(), CliError> {
    match command {
        Command::Count { class, lengths } => cmd_count(s, class, lengths),
        Command::Poly { class, lengths, stats, label_split, tree } => {
            cmd_poly(s, class, lengths, stats, *label_split, tree.as_deref())
        }
        Command::Seqcount { kind, avoid, lengths } => cmd_seqcount(s, *kind, avoid, lengths),
        Command::Gmap { perm, seq, .. } => cmd_gmap(s, perm.as_deref(), seq.as_deref()),
        Command::Activesites { perm } => cmd_activesites(s, perm),
        Command::Label { tree, perm } => cmd_label(s, tree, perm),
        Command::Series { gf, k, order, at, list } => cmd_series(s, gf.as_deref(), *k, *order, at.as_deref(), *list),
        Command::Verify { check, all, list, n_max } => cmd_verify(s, check.as_deref(), *all, *list, *n_max),
        Command::Oeis { terms, offline } => cmd_oeis(s, terms, offline.as_ref().map(|p| p.as_deref())),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let mut session = Session::new(cli.global.clone());
    let outcome = dispatch(&mut session, &cli.command);
    let saved = match session.cache.as_mut() {
        Some(c) => c.save(),
        None => Ok(()),
    };
    let mut stdout = std::io::stdout().lock();
    for line in &session.out {
        let _ = writeln!(stdout, "{line}");
    }
    let _ = stdout.flush();
    if let Err(e) = saved {
        eprintln!("warning: {e}");
    }
    if let Err(e) = outcome {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
