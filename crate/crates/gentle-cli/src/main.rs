//! Command-line front end for the gentle-core toolkit.

mod quiverfile;

use std::fmt::Display;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gentle_core::ar::{
    ar_component, ar_triangle_band, ar_triangle_string, certify_band_triangle,
    check_string_triangle, jordan_block, verify_triangles, ARTriangle,
    Component, ObjDesc,
};
use gentle_core::complexes::{band_complex, string_complex, PathSum, ProjComplex};
use gentle_core::field::{Field, PrimeField, Rationals};
use gentle_core::happel::{psi, psi_prime, verify_embedding};
use gentle_core::homotopy::{
    directed_decomposition, enumerate_homotopy_strings, is_homotopy_band, is_homotopy_string, Ctx,
};
use gentle_core::quiver::{BoundQuiver, StringFunctions};
use gentle_core::rep::{is_isomorphic, string_module};
use gentle_core::repetitive::{hat_projectives, hat_syzygy, HatError, RepQuiver};
use gentle_core::walk::{Letter, SignTable, Walk};

#[derive(Parser)]
#[command(name = "gentle", version, about = "String combinatorics toolkit for gentle algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct Common {
    /// bundled quiver name (q1, q2, q3) or path to a quiver file
    #[arg(long, default_value = "q1")]
    quiver: String,
    /// coefficient field: a prime p, or `q` for the rationals
    #[arg(long, default_value = "5")]
    field: String,
    /// enumeration length bound
    #[arg(long, default_value_t = 6)]
    max_len: usize,
    /// repetitive layer window `lo:hi`; default sized from max-len
    #[arg(long)]
    seed_layer_window: Option<String>,
    /// run the repetitive-side validations alongside the combinatorics
    #[arg(long)]
    checked: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum HatOp {
    Delta,
    DeltaInv,
    Times,
    Plus,
    PlusLeft,
    PlusRight,
    PlusBoth,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Embedding,
    Triangles,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the gentle axioms and print the string functions
    Validate {
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate homotopy strings as JSON lines
    Strings {
        #[command(flatten)]
        common: Common,
    },
    /// Print the string or band complex of a walk
    Complex {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        m: i64,
        #[arg(long)]
        walk: String,
        /// Jordan parameter `n,lambda` for a band walk
        #[arg(long)]
        jordan: Option<String>,
    },
    /// Evaluate a syzygy or neighbour operation on a hat walk
    Hatstring {
        #[command(flatten)]
        common: Common,
        /// walk literal over the hat quiver (letters like `a[0]`, `a*[-1]-`)
        #[arg(long)]
        walk: String,
        #[arg(long, value_enum)]
        op: HatOp,
    },
    /// Compute the hat image of a base walk, with the recursion trace
    Psi {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        walk: String,
    },
    /// Run the identity suites and emit a report
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Print the almost split triangle of a string or band complex
    Ar {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        m: i64,
        /// homotopy string walk
        #[arg(long, conflicts_with = "band")]
        walk: Option<String>,
        /// homotopy band walk
        #[arg(long)]
        band: Option<String>,
        /// Jordan parameter `n,lambda` (required with --band)
        #[arg(long)]
        jordan: Option<String>,
    },
    /// Explore a patch of the translation quiver from a seed object
    Component {
        #[command(flatten)]
        common: Common,
        /// seed walk literal
        #[arg(long)]
        seed: String,
        #[arg(long, default_value_t = 0)]
        m: i64,
        /// Jordan parameter `n,lambda` to seed a band object
        #[arg(long)]
        jordan: Option<String>,
        #[arg(long, default_value_t = 6)]
        steps: usize,
    },
    /// Run every suite on the bundled quivers (or one given quiver)
    Selftest {
        #[command(flatten)]
        common: Common,
        /// restrict to the configured quiver instead of all bundled ones
        #[arg(long)]
        only: bool,
    },
}

enum FieldChoice {
    Prime(u64),
    Rationals,
}

fn parse_field(s: &str) -> Result<FieldChoice, String> {
    if s == "q" || s == "Q" {
        return Ok(FieldChoice::Rationals);
    }
    let p: u64 = s.parse().map_err(|_| format!("invalid field `{}`", s))?;
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(format!("field characteristic {} is not prime", p));
    }
    Ok(FieldChoice::Prime(p))
}

fn prime_field(s: &str) -> Result<PrimeField, String> {
    match parse_field(s)? {
        FieldChoice::Prime(p) => Ok(PrimeField::new(p)),
        FieldChoice::Rationals => {
            Err(String::from("this subcommand needs a finite prime field (try --field 5)"))
        }
    }
}

const BUNDLED: [(&str, &str); 3] = [
    ("q1", include_str!("../../../quivers/q1.quiver")),
    ("q2", include_str!("../../../quivers/q2.quiver")),
    ("q3", include_str!("../../../quivers/q3.quiver")),
];

fn load_quiver(name: &str) -> Result<BoundQuiver, String> {
    let text = match BUNDLED.iter().find(|(n, _)| *n == name) {
        Some((_, t)) => (*t).to_string(),
        None => std::fs::read_to_string(name)
            .map_err(|e| format!("cannot read quiver file `{}`: {}", name, e))?,
    };
    quiverfile::parse_quiver(&text).map_err(|e| format!("{}: {}", name, e))
}

fn string_functions(q: &BoundQuiver) -> Result<StringFunctions, String> {
    q.compute_string_functions().map_err(|e| format!("string functions: {}", e))
}

fn parse_walk(q: &BoundQuiver, s: &str) -> Result<Walk, String> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("1:(") {
        let inner = rest.strip_suffix(')').ok_or("trivial walk literal must end with `)`")?;
        let (name, sign) =
            inner.rsplit_once(',').ok_or("trivial walk literal is `1:(<vertex>,<+|->)`")?;
        let sign = match sign.trim() {
            "+" => 1,
            "-" => -1,
            other => return Err(format!("invalid sign `{}`", other)),
        };
        let v = q
            .vertex_by_name(name.trim())
            .ok_or_else(|| format!("unknown vertex `{}`", name.trim()))?;
        return Ok(Walk::trivial(v, sign));
    }
    let mut letters = Vec::new();
    for tok in s.split_whitespace() {
        let (name, inverse) = match tok.strip_suffix('-') {
            Some(n) if q.arrow_by_name(n).is_some() => (n, true),
            _ => (tok, false),
        };
        let a = q.arrow_by_name(name).ok_or_else(|| format!("unknown arrow `{}`", name))?;
        letters.push(if inverse { Letter::inv(a) } else { Letter::direct(a) });
    }
    if letters.is_empty() {
        return Err(String::from("empty walk literal"));
    }
    let w = Walk::from_letters(letters);
    if !w.is_reduced_walk(q) {
        return Err(format!("`{}` is not a reduced walk", s));
    }
    Ok(w)
}

fn parse_jordan(s: &str) -> Result<(usize, i64), String> {
    let (n, lam) = s.split_once(',').ok_or("jordan parameter is `n,lambda`")?;
    let n: usize = n.trim().parse().map_err(|_| "invalid jordan size")?;
    let lam: i64 = lam.trim().parse().map_err(|_| "invalid jordan eigenvalue")?;
    if n == 0 {
        return Err(String::from("jordan size must be positive"));
    }
    Ok((n, lam))
}

fn window(common: &Common, q: &BoundQuiver) -> Result<(i64, i64), String> {
    match &common.seed_layer_window {
        Some(s) => {
            let (lo, hi) = s.split_once(':').ok_or("window is `lo:hi`")?;
            let lo: i64 = lo.trim().parse().map_err(|_| "invalid window bound")?;
            let hi: i64 = hi.trim().parse().map_err(|_| "invalid window bound")?;
            if lo >= hi {
                return Err(String::from("window must satisfy lo < hi"));
            }
            Ok((lo, hi))
        }
        None => {
            let r = common.max_len as i64 + q.num_arrows() as i64 + 2;
            Ok((-r, r))
        }
    }
}

fn desc_str(q: &BoundQuiver, d: &ObjDesc) -> String {
    match d {
        ObjDesc::Zero => String::from("0"),
        ObjDesc::String { m, walk } => format!("X({}, {})", m, walk.display(q)),
        ObjDesc::Band { m, walk, n, lambda } => {
            format!("Y({}, {}, J{}({}))", m, walk.display(q), n, lambda)
        }
    }
}

fn ps_str<F: Field>(q: &BoundQuiver, f: &F, ps: &PathSum<F::Elem>) -> String
where
    F::Elem: Display,
{
    if ps.0.is_empty() {
        return String::from("0");
    }
    ps.0.iter()
        .map(|(c, p)| {
            if *c == f.one() {
                p.display(q)
            } else {
                format!("{}*{}", c, p.display(q))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn emit_complex<F: Field>(q: &BoundQuiver, f: &F, x: &ProjComplex<F::Elem>, format: Format)
where
    F::Elem: Display,
{
    let degs: Vec<i64> = (x.min_deg..=x.max_deg()).collect();
    if format == Format::Json {
        let terms: Vec<_> = degs
            .iter()
            .map(|&m| {
                json!({
                    "deg": m,
                    "summands": x.term(m).iter().map(|&v| q.vertex_name(v)).collect::<Vec<_>>(),
                })
            })
            .collect();
        let diffs: Vec<_> = degs
            .iter()
            .filter(|&&m| m < x.max_deg())
            .map(|&m| {
                let d = x.diff(m);
                let rows: Vec<Vec<String>> = (0..d.rows)
                    .map(|i| (0..d.cols).map(|j| ps_str(q, f, d.at(i, j))).collect())
                    .collect();
                json!({ "from": m, "to": m + 1, "matrix": rows })
            })
            .collect();
        println!("{}", json!({ "minDeg": x.min_deg, "terms": terms, "diffs": diffs }));
        return;
    }
    for &m in &degs {
        let names: Vec<String> =
            x.term(m).iter().map(|&v| format!("P({})", q.vertex_name(v))).collect();
        println!("deg {}: {}", m, if names.is_empty() { String::from("0") } else { names.join(" + ") });
    }
    for &m in &degs {
        if m >= x.max_deg() {
            break;
        }
        let d = x.diff(m);
        println!("d {} -> {}:", m, m + 1);
        for i in 0..d.rows {
            let row: Vec<String> = (0..d.cols).map(|j| ps_str(q, f, d.at(i, j))).collect();
            println!("  [{}]", row.join(", "));
        }
    }
}

fn cmd_validate(common: &Common) -> Result<(), String> {
    let q = load_quiver(&common.quiver)?;
    let report = q.validate_gentle();
    let almost = q.validate_almost_gentle();
    let st = if report.is_ok() { Some(string_functions(&q)?) } else { None };
    match common.format {
        Format::Json => {
            let violations: Vec<_> = report
                .violations
                .iter()
                .map(|v| json!({ "clause": v.clause(), "detail": v.describe(&q) }))
                .collect();
            let sf = st.as_ref().map(|st| {
                let per: Vec<_> = q
                    .arrows()
                    .map(|a| json!({ "arrow": q.arrow_name(a), "s": st.s(a), "t": st.t(a) }))
                    .collect();
                json!({ "consistent": st.check(&q), "arrows": per })
            });
            println!(
                "{}",
                json!({
                    "gentle": report.is_ok(),
                    "almostGentle": almost.is_ok(),
                    "violations": violations,
                    "stringFunctions": sf,
                })
            );
        }
        _ => {
            println!("vertices: {}  arrows: {}", q.num_vertices(), q.num_arrows());
            if report.is_ok() {
                println!("gentle: ok");
            } else {
                println!("gentle: FAILED");
                for v in &report.violations {
                    println!("  clause {}: {}", v.clause(), v.describe(&q));
                }
            }
            if let Some(st) = &st {
                println!("string functions: {}", if st.check(&q) { "ok" } else { "FAILED" });
                for a in q.arrows() {
                    println!("  {}: S = {:+}, T = {:+}", q.arrow_name(a), st.s(a), st.t(a));
                }
            }
        }
    }
    if report.is_ok() {
        Ok(())
    } else {
        Err(String::from("gentle validation failed"))
    }
}

fn cmd_strings(common: &Common) -> Result<(), String> {
    let q = load_quiver(&common.quiver)?;
    let st = string_functions(&q)?;
    let table = SignTable::new(&q, &st);
    let ctx = Ctx::new(&q, &st, &table);
    for w in enumerate_homotopy_strings(&q, common.max_len) {
        let d = directed_decomposition(&q, &w);
        let line = json!({
            "word": w.display(&q),
            "L": d.l(),
            "deg": d.deg(),
            "isBand": is_homotopy_band(&ctx, &w),
        });
        println!("{}", line);
    }
    Ok(())
}

fn cmd_complex(common: &Common, m: i64, walk: &str, jordan: Option<&str>) -> Result<(), String> {
    let q = load_quiver(&common.quiver)?;
    let st = string_functions(&q)?;
    let table = SignTable::new(&q, &st);
    let ctx = Ctx::new(&q, &st, &table);
    let w = parse_walk(&q, walk)?;
    match parse_field(&common.field)? {
        FieldChoice::Prime(p) => {
            let f = PrimeField::new(p);
            let x = build_complex(&ctx, &f, m, &w, jordan)?;
            emit_complex(&q, &f, &x, common.format);
        }
        FieldChoice::Rationals => {
            let f = Rationals;
            let x = build_complex(&ctx, &f, m, &w, jordan)?;
            emit_complex(&q, &f, &x, common.format);
        }
    }
    Ok(())
}

fn build_complex<F: Field>(
    ctx: &Ctx,
    f: &F,
    m: i64,
    w: &Walk,
    jordan: Option<&str>,
) -> Result<ProjComplex<F::Elem>, String> {
    match jordan {
        Some(j) => {
            if !is_homotopy_band(ctx, w) {
                return Err(String::from("--jordan needs a homotopy band walk"));
            }
            let (n, lam) = parse_jordan(j)?;
            let lam = f.from_i64(lam);
            if f.is_zero(&lam) {
                return Err(String::from("eigenvalue must be nonzero in the field"));
            }
            Ok(band_complex(ctx, f, m, w, &jordan_block(f, n, &lam)))
        }
        None => {
            if !is_homotopy_string(ctx.q, w) {
                return Err(String::from("not a homotopy string"));
            }
            Ok(string_complex(ctx, f, m, w))
        }
    }
}

fn hat_err(e: HatError) -> String {
    match e {
        HatError::WindowExhausted => {
            String::from("layer window exhausted; widen it with --seed-layer-window")
        }
    }
}

fn cmd_hatstring(common: &Common, walk: &str, op: HatOp) -> Result<(), String> {
    let q = load_quiver(&common.quiver)?;
    let st = string_functions(&q)?;
    let (lo, hi) = window(common, &q)?;
    let rq = RepQuiver::new(&q, &st, lo, hi);
    let w = parse_walk(&rq.q, walk)?;
    let out: Option<Walk> = match op {
        HatOp::Delta => Some(rq.delta_cap(&w).map_err(hat_err)?),
        HatOp::DeltaInv => Some(rq.delta_cap_inv(&w).map_err(hat_err)?),
        HatOp::Times => Some(rq.times(&w).map_err(hat_err)?),
        HatOp::Plus => Some(rq.plus(&w).map_err(hat_err)?),
        HatOp::PlusLeft => rq.plus_left(&w),
        HatOp::PlusRight => rq.plus_right(&w),
        HatOp::PlusBoth => rq.plus_both(&w),
    };
    let shown = out.as_ref().map(|v| v.display(&rq.q));
    match common.format {
        Format::Json => println!(
            "{}",
            json!({ "input": w.display(&rq.q), "result": shown, "window": [lo, hi] })
        ),
        _ => println!("{}", shown.unwrap_or_else(|| String::from("(empty)"))),
    }
    Ok(())
}

fn cmd_psi(common: &Common, walk: &str) -> Result<(), String> {
    let q = load_quiver(&common.quiver)?;
    let st = string_functions(&q)?;
    let table = SignTable::new(&q, &st);
    let ctx = Ctx::new(&q, &st, &table);
    let (lo, hi) = window(common, &q)?;
    let rq = RepQuiver::new(&q, &st, lo, hi);
    let w = parse_walk(&q, walk)?;
    if is_homotopy_band(&ctx, &w) {
        let img = psi_prime(&rq, &ctx, &w).map_err(hat_err)?;
        match common.format {
            Format::Json => println!(
                "{}",
                json!({ "input": w.display(&q), "band": true, "psi": img.display(&rq.q) })
            ),
            _ => println!("psi' = {}", img.display(&rq.q)),
        }
        return Ok(());
    }
    if !is_homotopy_string(&q, &w) {
        return Err(String::from("not a homotopy string"));
    }
    let res = psi(&rq, &ctx, &w).map_err(hat_err)?;
    let trace: Vec<String> = res.trace.iter().map(|c| format!("{:?}", c)).collect();
    match common.format {
        Format::Json => println!(
            "{}",
            json!({
                "input": w.display(&q),
                "band": false,
                "psi": res.walk.display(&rq.q),
                "trace": trace,
            })
        ),
        _ => {
            println!("psi = {}", res.walk.display(&rq.q));
            println!("trace: {}", trace.join(" > "));
        }
    }
    Ok(())
}

fn jordan_mus(f: &PrimeField) -> Vec<gentle_core::matrix::Matrix<u64>> {
    vec![
        jordan_block(f, 1, &f.from_i64(1)),
        jordan_block(f, 1, &f.from_i64(2)),
        jordan_block(f, 2, &f.from_i64(1)),
    ]
}

fn cmd_verify(common: &Common, suite: Suite) -> Result<(), String> {
    let q = load_quiver(&common.quiver)?;
    let st = string_functions(&q)?;
    let f = prime_field(&common.field)?;
    let mut ok = true;
    let mut out = serde_json::Map::new();
    if matches!(suite, Suite::Embedding | Suite::All) {
        let oracle_len = common.max_len.min(4);
        let rep = verify_embedding(&q, &st, &f, common.max_len, oracle_len, &jordan_mus(&f));
        ok &= rep.ok();
        out.insert(
            String::from("embedding"),
            json!({
                "ok": rep.ok(),
                "strings": rep.strings,
                "bands": rep.bands,
                "oracleStrings": rep.oracle_strings,
                "oracleBands": rep.oracle_bands,
                "injective": rep.injective,
                "inverse": rep.inverse,
                "particular": rep.particular,
                "concat": rep.concat,
                "oracle": rep.oracle,
                "bandOracle": rep.band_oracle,
                "failures": rep.failures,
            }),
        );
    }
    if matches!(suite, Suite::Triangles | Suite::All) {
        let tri_len = common.max_len.min(3);
        let rep = verify_triangles(&q, &st, &f, common.max_len, tri_len, &[1, 2], 2);
        ok &= rep.ok();
        out.insert(
            String::from("triangles"),
            json!({
                "ok": rep.ok(),
                "strings": rep.strings,
                "bands": rep.bands,
                "trianglesChecked": rep.triangles_checked,
                "bandTriangles": rep.band_triangles,
                "lemma": rep.lemma,
                "dual": rep.dual,
                "merge": rep.merge,
                "boundary": rep.boundary,
                "triangles": rep.triangles,
                "bandOk": rep.band_ok,
                "failures": rep.failures,
            }),
        );
    }
    match common.format {
        Format::Json => println!("{}", serde_json::Value::Object(out)),
        _ => {
            for (name, v) in &out {
                let passed = v["ok"].as_bool().unwrap_or(false);
                println!("{}: {}", name, if passed { "ok" } else { "FAILED" });
                for fail in v["failures"].as_array().into_iter().flatten() {
                    println!("  {}", fail.as_str().unwrap_or(""));
                }
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(String::from("verification failed"))
    }
}

fn emit_triangle(q: &BoundQuiver, tri: &ARTriangle, format: Format, checked: &[String]) {
    match format {
        Format::Json => {
            println!(
                "{}",
                json!({
                    "start": desc_str(q, &tri.start),
                    "middle": tri.middle.iter().map(|d| desc_str(q, d)).collect::<Vec<_>>(),
                    "end": desc_str(q, &tri.end),
                    "shiftedStart": desc_str(q, &tri.shifted_start),
                    "mPrime": tri.m_prime,
                    "mDblPrime": tri.m_dblprime,
                    "checkedFailures": checked,
                })
            );
        }
        _ => {
            let mid: Vec<String> = tri.middle.iter().map(|d| desc_str(q, d)).collect();
            println!(
                "{} -> {} -> {} -> {}",
                desc_str(q, &tri.start),
                if mid.is_empty() { String::from("0") } else { mid.join(" (+) ") },
                desc_str(q, &tri.end),
                desc_str(q, &tri.shifted_start),
            );
            println!("m' = {}  m'' = {}", tri.m_prime, tri.m_dblprime);
            if !checked.is_empty() {
                for fail in checked {
                    println!("checked: {}", fail);
                }
            }
        }
    }
}

fn cmd_ar(
    common: &Common,
    m: i64,
    walk: Option<&str>,
    band: Option<&str>,
    jordan: Option<&str>,
) -> Result<(), String> {
    let q = load_quiver(&common.quiver)?;
    let st = string_functions(&q)?;
    let table = SignTable::new(&q, &st);
    let ctx = Ctx::new(&q, &st, &table);
    if let Some(bw) = band {
        let (n, lam) = parse_jordan(jordan.ok_or("--band needs --jordan n,lambda")?)?;
        let w = parse_walk(&q, bw)?;
        if !is_homotopy_band(&ctx, &w) {
            return Err(String::from("not a homotopy band"));
        }
        let tri = ar_triangle_band(&ctx, m, &w, n, lam);
        let mut fails = Vec::new();
        if common.checked {
            let f = prime_field(&common.field)?;
            let r = common.max_len as i64 + 3 * (q.num_arrows() as i64 + 2) + 3 * n as i64;
            let rq = RepQuiver::new(&q, &st, -r, r);
            if let Err(e) = certify_band_triangle(&rq, &ctx, &f, &w, n, lam) {
                fails.push(e);
            }
        }
        emit_triangle(&q, &tri, common.format, &fails);
        return if fails.is_empty() { Ok(()) } else { Err(String::from("certification failed")) };
    }
    let w = parse_walk(&q, walk.ok_or("give --walk or --band")?)?;
    if !is_homotopy_string(&q, &w) || is_homotopy_band(&ctx, &w) {
        return Err(String::from("not a homotopy string (bands go through --band)"));
    }
    let tri = ar_triangle_string(&ctx, m, &w);
    let mut fails = Vec::new();
    if common.checked {
        let f = prime_field(&common.field)?;
        let mut r = common.max_len as i64 + 3 * (q.num_arrows() as i64 + 2);
        let mut done = false;
        for _ in 0..6 {
            let rq = RepQuiver::new(&q, &st, -r, r);
            let hp = hat_projectives(&rq, &f);
            match check_string_triangle(&rq, &ctx, &f, &hp, m, &w) {
                Ok(fs) => {
                    fails = fs;
                    done = true;
                    break;
                }
                Err(HatError::WindowExhausted) => r += 3,
            }
        }
        if !done {
            fails.push(String::from("layer window kept exhausting"));
        }
    }
    emit_triangle(&q, &tri, common.format, &fails);
    if fails.is_empty() {
        Ok(())
    } else {
        Err(String::from("checked validation failed"))
    }
}

fn emit_component(q: &BoundQuiver, c: &Component, format: Format) {
    match format {
        Format::Dot => {
            println!("digraph component {{");
            for (i, d) in c.nodes.iter().enumerate() {
                let label = match d {
                    ObjDesc::Zero => String::from("0"),
                    ObjDesc::String { m, walk } => format!("({}, {})", m, walk.display(q)),
                    ObjDesc::Band { m, walk, n, lambda } => {
                        format!("({}, {}, J{}({}))", m, walk.display(q), n, lambda)
                    }
                };
                println!("  n{} [label=\"{}\"];", i, label.replace('"', "\\\""));
            }
            for &(a, b) in &c.arrows {
                println!("  n{} -> n{};", a, b);
            }
            for &(a, b) in &c.tau_edges {
                println!("  n{} -> n{} [style=dashed];", a, b);
            }
            println!("}}");
        }
        Format::Json => {
            println!(
                "{}",
                json!({
                    "nodes": c.nodes.iter().map(|d| desc_str(q, d)).collect::<Vec<_>>(),
                    "arrows": c.arrows,
                    "tauEdges": c.tau_edges,
                })
            );
        }
        Format::Text => {
            for (i, d) in c.nodes.iter().enumerate() {
                println!("{}: {}", i, desc_str(q, d));
            }
            for &(a, b) in &c.arrows {
                println!("arrow {} -> {}", a, b);
            }
            for &(a, b) in &c.tau_edges {
                println!("tau {} -> {}", a, b);
            }
        }
    }
}

fn cmd_component(
    common: &Common,
    seed: &str,
    m: i64,
    jordan: Option<&str>,
    steps: usize,
) -> Result<(), String> {
    let q = load_quiver(&common.quiver)?;
    let st = string_functions(&q)?;
    let table = SignTable::new(&q, &st);
    let ctx = Ctx::new(&q, &st, &table);
    let w = parse_walk(&q, seed)?;
    let desc = match jordan {
        Some(j) => {
            if !is_homotopy_band(&ctx, &w) {
                return Err(String::from("--jordan needs a homotopy band seed"));
            }
            let (n, lam) = parse_jordan(j)?;
            ObjDesc::Band { m, walk: w, n, lambda: lam }
        }
        None => {
            if !is_homotopy_string(&q, &w) || is_homotopy_band(&ctx, &w) {
                return Err(String::from("seed must be a homotopy string (or pass --jordan)"));
            }
            ObjDesc::String { m, walk: w }
        }
    };
    let c = ar_component(&ctx, &desc, steps);
    emit_component(&q, &c, common.format);
    Ok(())
}

/// One quiver's pass through every suite; failures collect human-readable
/// counterexample lines.
fn selftest_quiver(name: &str, q: &BoundQuiver, f: &PrimeField) -> (serde_json::Value, Vec<String>) {
    let mut fails: Vec<String> = Vec::new();
    let mut stage = serde_json::Map::new();
    let gentle = q.validate_gentle();
    stage.insert(String::from("gentle"), json!(gentle.is_ok()));
    if !gentle.is_ok() {
        for v in &gentle.violations {
            fails.push(format!("{}: {}", name, v.describe(q)));
        }
        return (serde_json::Value::Object(stage), fails);
    }
    let st = match q.compute_string_functions() {
        Ok(st) => st,
        Err(e) => {
            fails.push(format!("{}: string functions: {}", name, e));
            stage.insert(String::from("stringFunctions"), json!(false));
            return (serde_json::Value::Object(stage), fails);
        }
    };
    let sf_ok = st.check(q);
    stage.insert(String::from("stringFunctions"), json!(sf_ok));
    if !sf_ok {
        fails.push(format!("{}: string-function axioms violated", name));
    }
    let table = SignTable::new(q, &st);
    let ctx = Ctx::new(q, &st, &table);

    let mut complexes_ok = true;
    for w in enumerate_homotopy_strings(q, 4) {
        for m in -1..=1 {
            let x = string_complex(&ctx, f, m, &w);
            if !gentle_core::complexes::check_d2(q, f, &x) {
                complexes_ok = false;
                fails.push(format!("{}: d^2 != 0 for {} at shift {}", name, w.display(q), m));
            }
        }
        let x = string_complex(&ctx, f, 0, &w);
        let d = directed_decomposition(q, &w);
        let y = string_complex(&ctx, f, d.deg(), &w.invert());
        let u = gentle_core::complexes::upsilon(&ctx, f, 0, &w);
        if !gentle_core::complexes::is_chain_map(q, f, &x, &y, &u) {
            complexes_ok = false;
            fails.push(format!("{}: fold map not a chain map for {}", name, w.display(q)));
        }
    }
    stage.insert(String::from("complexes"), json!(complexes_ok));

    let mut rep_ok = true;
    let r = 4 + q.num_arrows() as i64 + 2;
    let rq = RepQuiver::new(q, &st, -r, r);
    if !rq.q.validate_almost_gentle().is_ok() || !rq.st.check(&rq.q) {
        rep_ok = false;
        fails.push(format!("{}: hat quiver fails the almost gentle axioms", name));
    }
    let hp = hat_projectives(&rq, f);
    for w in enumerate_homotopy_strings(&rq.q, 2) {
        if !w.is_string(&rq.q) {
            continue;
        }
        let (a, b) = rq.layer_span(&w);
        if a < rq.lo + 2 || b > rq.hi - 2 {
            continue;
        }
        let round = rq
            .delta_cap(&w)
            .and_then(|d| rq.delta_cap_inv(&d))
            .map(|v| rq.sym(&v) == rq.sym(&w));
        if round != Ok(true) {
            rep_ok = false;
            fails.push(format!("{}: delta roundtrip failed for {}", name, w.display(&rq.q)));
            continue;
        }
        let v = string_module(&rq.q, f, &w).rep;
        let syz = hat_syzygy(&rq, f, &hp, &v);
        let expect = rq.delta_cap_inv(&w).map(|d| string_module(&rq.q, f, &d).rep);
        match (syz, expect) {
            (Ok(s), Ok(e)) => {
                if !is_isomorphic(&rq.q, f, &s, &e) {
                    rep_ok = false;
                    fails.push(format!("{}: syzygy oracle failed for {}", name, w.display(&rq.q)));
                }
            }
            _ => {
                rep_ok = false;
                fails.push(format!("{}: syzygy window exhausted at {}", name, w.display(&rq.q)));
            }
        }
    }
    stage.insert(String::from("repetitive"), json!(rep_ok));

    let emb = verify_embedding(q, &st, f, 4, 2, &jordan_mus(f));
    stage.insert(String::from("embedding"), json!(emb.ok()));
    for e in &emb.failures {
        fails.push(format!("{}: embedding: {}", name, e));
    }
    if !emb.ok() && emb.failures.is_empty() {
        fails.push(format!("{}: embedding suite failed", name));
    }

    let tri = verify_triangles(q, &st, f, 4, 2, &[1, 2], 2);
    stage.insert(String::from("triangles"), json!(tri.ok()));
    for e in &tri.failures {
        fails.push(format!("{}: triangles: {}", name, e));
    }
    if !tri.ok() && tri.failures.is_empty() {
        fails.push(format!("{}: triangle suite failed", name));
    }

    (serde_json::Value::Object(stage), fails)
}

fn cmd_selftest(common: &Common, only: bool) -> Result<(), String> {
    let f = prime_field(&common.field)?;
    let single = only || !BUNDLED.iter().any(|(n, _)| *n == common.quiver);
    let targets: Vec<(String, BoundQuiver)> = if single {
        vec![(common.quiver.clone(), load_quiver(&common.quiver)?)]
    } else {
        let mut v = Vec::new();
        for (n, _) in BUNDLED {
            v.push((String::from(n), load_quiver(n)?));
        }
        v
    };
    let mut all_fails = Vec::new();
    let mut report = serde_json::Map::new();
    for (name, q) in &targets {
        let (stage, fails) = selftest_quiver(name, q, &f);
        report.insert(name.clone(), stage);
        all_fails.extend(fails);
    }
    match common.format {
        Format::Json => println!(
            "{}",
            json!({ "ok": all_fails.is_empty(), "quivers": report, "failures": all_fails })
        ),
        _ => {
            for (name, stage) in &report {
                let passed = stage
                    .as_object()
                    .map(|o| o.values().all(|v| v.as_bool() == Some(true)))
                    .unwrap_or(false);
                println!("{}: {}", name, if passed { "ok" } else { "FAILED" });
            }
            for fail in &all_fails {
                println!("  {}", fail);
            }
        }
    }
    if all_fails.is_empty() {
        Ok(())
    } else {
        Err(format!("selftest failed: {}", all_fails[0]))
    }
}

fn run(cli: &Cli) -> Result<(), String> {
    match &cli.cmd {
        Cmd::Validate { common } => cmd_validate(common),
        Cmd::Strings { common } => cmd_strings(common),
        Cmd::Complex { common, m, walk, jordan } => {
            cmd_complex(common, *m, walk, jordan.as_deref())
        }
        Cmd::Hatstring { common, walk, op } => cmd_hatstring(common, walk, *op),
        Cmd::Psi { common, walk } => cmd_psi(common, walk),
        Cmd::Verify { common, suite } => cmd_verify(common, *suite),
        Cmd::Ar { common, m, walk, band, jordan } => {
            cmd_ar(common, *m, walk.as_deref(), band.as_deref(), jordan.as_deref())
        }
        Cmd::Component { common, seed, m, jordan, steps } => {
            cmd_component(common, seed, *m, jordan.as_deref(), *steps)
        }
        Cmd::Selftest { common, only } => cmd_selftest(common, *only),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::FAILURE
        }
    }
}
