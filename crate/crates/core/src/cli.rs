//! The `thompson` command line. [`run`] takes the arguments and writers so
//! reports can be captured in-process; the binary only forwards to it.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arcset::ArcSet;
use crate::constructions::{
    disjoint_support_obstruction, find_common_support_point, four_conjugate_analysis, haagerup_olesen_multisets,
    lemma_fixed_point_construct, lemma_powerfree_construct, verify_pi_relation, ConstructionResult, ElementMultiset,
};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, CirclePoint, Rational};
use crate::pingpong::{free_power_search, random_reduced_word_check, verify_certificate, Limits, PingPongCertificate, SearchTrace};
use crate::plmap::{parse_element, random_word, Bindings, PlMap, DEFAULT_Q_MAX};
use crate::spectral::{
    free_group_oracle_counts, identity_return_counts, kesten_bound, moment_norm_lower_bound, WeightedElement,
    DEFAULT_BUDGET, DEFAULT_DIGITS,
};
use crate::witness::{parse_blocks, Block};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "thompson", version, about = "Exact PL circle dynamics, ping-pong certificates and free subgroups of Thompson's group T")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct LimitArgs {
    /// Largest denominator tried for rotation numbers
    #[arg(long, default_value_t = DEFAULT_Q_MAX)]
    q_max: u32,
    /// Cap on iterated powers during searches
    #[arg(long, default_value_t = 1 << 20)]
    max_power: u64,
    /// Cap on the steepness exponent of step-like maps
    #[arg(long, default_value_t = 40)]
    max_steepness: u32,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits { q_max: self.q_max, max_power: self.max_power, max_steepness: self.max_steepness, ..Limits::default() }
    }
}

#[derive(Args, Debug, Clone)]
struct WordArgs {
    /// Random reduced words sampled per family
    #[arg(long, default_value_t = 20)]
    word_trials: usize,
    /// Length of the sampled words
    #[arg(long, default_value_t = 8)]
    word_length: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug, Clone)]
struct SetArgs {
    /// Builtin set: E, H1 or H2
    #[arg(long, conflicts_with = "h")]
    set: Option<String>,
    /// Comma-separated elements, repeated for multiplicity
    #[arg(long)]
    h: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Tsv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical form of an element, or its value at a point
    Eval {
        element: String,
        #[arg(long)]
        at: Option<String>,
    },
    /// Product of elements, the rightmost applied first
    Compose {
        #[arg(required = true)]
        elements: Vec<String>,
    },
    /// Rotation number
    Rotnum {
        element: String,
        #[arg(long, default_value_t = DEFAULT_Q_MAX)]
        q_max: u32,
        /// Also print a periodic orbit realizing it
        #[arg(long)]
        orbit: bool,
    },
    /// Fixed set
    Fix { element: String },
    /// Support
    Supp { element: String },
    /// Whether two elements commute
    Commutes { a: String, b: String },
    /// Search for k with a and b^k playing ping-pong
    PingpongSearch {
        a: String,
        b: String,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        words: WordArgs,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Re-verify every block of a witness file
    VerifyCert { file: PathBuf },
    /// Step-like g fixing one point and conjugates c_i = g^(i theta)
    ConstructFixedpoint {
        #[command(flatten)]
        set: SetArgs,
        /// Point of the common support; found automatically if omitted
        #[arg(long)]
        point: Option<String>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        words: WordArgs,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// g with rotation number 1/|H| and free families of p-th powers
    ConstructPowerfree {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[command(flatten)]
        limits: LimitArgs,
        #[command(flatten)]
        words: WordArgs,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Decide whether the two sums of quasi-regular operators agree
    PiCheck {
        /// Builtin set name or comma-separated elements
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
    },
    /// Disjoint-support check for given or random conjugators
    Obstruction {
        #[arg(long, default_value = "g1")]
        h1: String,
        #[arg(long, default_value = "x1")]
        h2: String,
        #[arg(long, requires = "c2")]
        c1: Option<String>,
        #[arg(long, requires = "c1")]
        c2: Option<String>,
        /// Random conjugator pairs when c1, c2 are not given
        #[arg(long, default_value_t = 500)]
        trials: usize,
        /// Longest random conjugator word
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Triple intersections of the sets (c_j r^-1) Fix(g_i)
    FourConjugates {
        #[arg(long, default_value = "g1")]
        g1: String,
        #[arg(long, default_value = "x1")]
        g2: String,
        #[arg(long, default_value = "r")]
        r: String,
        #[arg(long, default_value = "e")]
        s: String,
        /// Four comma-separated conjugators; powers 1..4 of s r if omitted
        #[arg(long)]
        c: Option<String>,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Trace-moment lower bounds for the norm of a group-algebra element
    NormBound {
        /// Terms such as `1 + g1 + 1/2*g2`
        element: String,
        #[arg(long, default_value_t = 6)]
        k_max: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Spectral radius sqrt(2n-1)/n of the free group, and return counts
    Kesten {
        #[arg(long, default_value_t = 2)]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: u32,
        /// Comma-separated generators whose return counts are compared
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse { .. }
                | Error::UnboundName(_)
                | Error::NotDyadic(_)
                | Error::InvalidMap(_)
                | Error::InvalidArcSet(_)
                | Error::InvalidArgument(_) => EXIT_USAGE,
                _ => EXIT_FAILED,
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::InvalidArgument(e.to_string())
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(io)?
    };
}

fn element(text: &str) -> Result<PlMap> {
    parse_element(text, &Bindings::builtin())
}

/// Splits on commas outside of braces and parentheses.
fn split_list(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '{' | '(' | '[' => depth += 1,
            '}' | ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn element_list(text: &str) -> Result<Vec<PlMap>> {
    split_list(text).iter().map(|s| element(s)).collect()
}

fn builtin_set(name: &str) -> Option<ElementMultiset> {
    let sets = haagerup_olesen_multisets();
    match name {
        "E" => Some(sets.e),
        "H1" => Some(sets.h1),
        "H2" => Some(sets.h2),
        _ => None,
    }
}

fn multiset(text: &str) -> Result<ElementMultiset> {
    match builtin_set(text.trim()) {
        Some(s) => Ok(s),
        None => Ok(ElementMultiset::from_elements(element_list(text)?)),
    }
}

fn set_arg(args: &SetArgs) -> Result<ElementMultiset> {
    match (&args.set, &args.h) {
        (Some(name), _) => builtin_set(name).ok_or_else(|| Error::InvalidArgument(format!("unknown set `{name}`; use E, H1 or H2"))),
        (None, Some(list)) => multiset(list),
        (None, None) => Err(Error::InvalidArgument("give --set or --h".into())),
    }
}

fn point(text: &str) -> Result<CirclePoint> {
    text.parse()
}

/// `c*w` or `w` or `c` terms joined by `+`.
fn weighted(text: &str) -> Result<WeightedElement> {
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut pieces = vec![String::new()];
    for ch in text.chars() {
        match ch {
            '{' | '(' => depth += 1,
            '}' | ')' => depth -= 1,
            '+' if depth == 0 => {
                pieces.push(String::new());
                continue;
            }
            _ => {}
        }
        pieces.last_mut().unwrap().push(ch);
    }
    for piece in pieces {
        let t = piece.trim();
        if t.is_empty() {
            return Err(Error::InvalidArgument(format!("empty term in `{text}`")));
        }
        if let Ok(c) = parse_rational(t) {
            terms.push((c, PlMap::identity()));
            continue;
        }
        match t.split_once('*') {
            Some((c, w)) if parse_rational(c.trim()).is_ok() => terms.push((parse_rational(c.trim())?, element(w)?)),
            _ => terms.push((Rational::from_integer(1.into()), element(t)?)),
        }
    }
    Ok(WeightedElement::new(terms))
}

fn write_witness(path: &Path, blocks: &[Block]) -> Result<()> {
    let text: String = blocks.iter().map(|b| b.to_string()).collect();
    fs::write(path, text).map_err(io)
}

/// Samples reduced words over each family; prints one line per family.
fn word_check(out: &mut dyn Write, families: &[Vec<PlMap>], words: &WordArgs) -> Result<bool> {
    let mut ok = true;
    if words.word_trials == 0 {
        return Ok(true);
    }
    for (i, fam) in families.iter().enumerate() {
        let pass = random_reduced_word_check(fam, words.word_length, words.word_trials, words.seed.wrapping_add(i as u64));
        say!(out, "word check {}: {} words of length {}: {}", i + 1, words.word_trials, words.word_length, if pass { "no relation" } else { "RELATION FOUND" });
        ok &= pass;
    }
    Ok(ok)
}

fn construction_report(out: &mut dyn Write, res: &ConstructionResult, words: &WordArgs, emit: Option<&PathBuf>) -> Result<i32> {
    let blocks = res.to_blocks();
    for b in &blocks {
        say!(out, "{b}");
    }
    let families: Vec<Vec<PlMap>> = (0..res.per_h.len()).map(|i| res.family(i)).collect();
    let ok = word_check(out, &families, words)?;
    if let Some(path) = emit {
        write_witness(path, &blocks)?;
        say!(out, "witness written to {}", path.display());
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Eval { element: e, at } => {
            let f = element(&e)?;
            match at {
                Some(x) => say!(out, "{}", f.evaluate(&point(&x)?)),
                None => say!(out, "{f}"),
            }
        }
        Command::Compose { elements } => {
            let mut acc = PlMap::identity();
            for e in &elements {
                acc = acc.compose(&element(e)?);
            }
            say!(out, "{acc}");
        }
        Command::Rotnum { element: e, q_max, orbit } => {
            let f = element(&e)?;
            let rot = f.rotation_number(q_max)?;
            say!(out, "{rot}");
            if orbit {
                let pts: Vec<String> = f.periodic_orbit_witness(&rot)?.iter().map(|p| p.to_string()).collect();
                say!(out, "orbit {}", pts.join(" -> "));
            }
        }
        Command::Fix { element: e } => say!(out, "{}", element(&e)?.fixed_set()),
        Command::Supp { element: e } => say!(out, "{}", element(&e)?.support()),
        Command::Commutes { a, b } => say!(out, "{}", element(&a)?.commutes(&element(&b)?)),
        Command::PingpongSearch { a, b, limits, words, emit_witness } => {
            let (fa, fb) = (element(&a)?, element(&b)?);
            say!(out, "# pingpong-search a = {a}, b = {b}");
            say!(out, "# seed {}", words.seed);
            let (k, cert, trace) = free_power_search(&fa, &fb, &limits.limits())?;
            let bk = fb.power(k as i64);
            let blocks = vec![cert.to_block(&fa, &bk), trace.to_block()];
            say!(out, "k = {k}");
            for blk in &blocks {
                say!(out, "{blk}");
            }
            let ok = word_check(out, &[vec![fa, bk]], &words)?;
            if let Some(path) = &emit_witness {
                write_witness(path, &blocks)?;
                say!(out, "witness written to {}", path.display());
            }
            return Ok(if ok { EXIT_OK } else { EXIT_FAILED });
        }
        Command::VerifyCert { file } => {
            let text = fs::read_to_string(&file).map_err(io)?;
            return verify_witness_text(&text, out);
        }
        Command::ConstructFixedpoint { set, point: p, n, limits, words, emit_witness } => {
            let h = set_arg(&set)?;
            let p = match p {
                Some(p) => point(&p)?,
                None => find_common_support_point(&h).ok_or_else(|| Error::Precondition("the supports have no common point".into()))?,
            };
            say!(out, "# construct-fixedpoint H = {h}");
            say!(out, "# seed {}", words.seed);
            let res = lemma_fixed_point_construct(&h, &p, n, &limits.limits())?;
            return construction_report(out, &res, &words, emit_witness.as_ref());
        }
        Command::ConstructPowerfree { set, n, limits, words, emit_witness } => {
            let h = set_arg(&set)?;
            say!(out, "# construct-powerfree H = {h}");
            say!(out, "# seed {}", words.seed);
            let res = lemma_powerfree_construct(&h, n, &limits.limits())?;
            return construction_report(out, &res, &words, emit_witness.as_ref());
        }
        Command::PiCheck { h1, h2 } => {
            let (a, b) = (multiset(&h1)?, multiset(&h2)?);
            match verify_pi_relation(&a, &b) {
                Ok(()) => say!(out, "EQUAL"),
                Err(w) => {
                    say!(out, "DIFFERENT");
                    say!(out, "witness {w}");
                    return Ok(EXIT_FAILED);
                }
            }
        }
        Command::Obstruction { h1, h2, c1, c2, trials, max_len, seed } => {
            let (f1, f2) = (element(&h1)?, element(&h2)?);
            if let (Some(c1), Some(c2)) = (c1, c2) {
                let rep = disjoint_support_obstruction(&f1, &f2, &element(&c1)?, &element(&c2)?)?;
                say!(out, "union {}", rep.h1_union);
                say!(out, "intersection {}", rep.h2_intersection);
                say!(out, "covers {}", rep.covers);
                say!(out, "commute {}", rep.h2_conjugates_commute);
                say!(out, "{}", if rep.holds() { "HOLDS" } else { "FALSIFIED" });
                return Ok(if rep.holds() { EXIT_OK } else { EXIT_FAILED });
            }
            say!(out, "# obstruction h1 = {h1}, h2 = {h2}, trials = {trials}, max_len = {max_len}");
            say!(out, "# seed {seed}");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let bindings = Bindings::builtin();
            let (mut covered, mut falsified) = (0, 0);
            for t in 0..trials {
                let len1 = rand::Rng::gen_range(&mut rng, 0..=max_len);
                let w1 = random_word(&mut rng, &["x0", "x1", "r"], len1);
                let len2 = rand::Rng::gen_range(&mut rng, 0..=max_len);
                let w2 = random_word(&mut rng, &["x0", "x1", "r"], len2);
                let rep = disjoint_support_obstruction(&f1, &f2, &w1.evaluate(&bindings)?, &w2.evaluate(&bindings)?)?;
                if rep.covers {
                    covered += 1;
                    say!(out, "trial {}: c1 = {w1}, c2 = {w2}: covers, commute {}", t + 1, rep.h2_conjugates_commute);
                }
                if !rep.holds() {
                    falsified += 1;
                    say!(out, "trial {}: FALSIFIED by c1 = {w1}, c2 = {w2}", t + 1);
                }
            }
            say!(out, "trials {trials}, covering {covered}, falsified {falsified}");
            return Ok(if falsified == 0 { EXIT_OK } else { EXIT_FAILED });
        }
        Command::FourConjugates { g1, g2, r, s, c, emit_witness } => {
            let (f1, f2, fr, fs) = (element(&g1)?, element(&g2)?, element(&r)?, element(&s)?);
            let cs = match c {
                Some(list) => element_list(&list)?,
                None => {
                    let sr = fs.compose(&fr);
                    (1..=4).map(|m| sr.power(m)).collect()
                }
            };
            let rep = four_conjugate_analysis(&f1, &f2, &fr, &fs, &cs)?;
            let blk = rep.to_block();
            say!(out, "{blk}");
            if let Some(path) = &emit_witness {
                write_witness(path, std::slice::from_ref(&blk))?;
                say!(out, "witness written to {}", path.display());
            }
            return Ok(if rep.triple.is_some() && rep.acts_as_sr { EXIT_OK } else { EXIT_FAILED });
        }
        Command::NormBound { element: e, k_max, budget, digits, format } => {
            let t = weighted(&e)?;
            let rep = moment_norm_lower_bound(&t, k_max, budget, digits)?;
            match format {
                Format::Text => {
                    say!(out, "# T = {t}");
                    write!(out, "{rep}").map_err(io)?;
                }
                Format::Tsv => write!(out, "{}", rep.to_tsv()).map_err(io)?,
            }
        }
        Command::Kesten { n, digits, gens, max_len, budget } => {
            let kb = kesten_bound(n, digits)?;
            say!(out, "{kb}");
            if let Some(list) = gens {
                let g = element_list(&list)?;
                let counts = identity_return_counts(&g, max_len, budget)?;
                let oracle = free_group_oracle_counts(g.len(), max_len);
                say!(out, "L\tcount\tfree");
                for (l, c) in counts.counts.iter().enumerate() {
                    say!(out, "{l}\t{c}\t{}", oracle[l]);
                }
                if !counts.complete {
                    say!(out, "incomplete: budget reached");
                }
                let same = counts.counts[..] == oracle[..counts.counts.len()];
                say!(out, "{}", if same { "MATCHES FREE GROUP" } else { "DIFFERS FROM FREE GROUP" });
                return Ok(if same { EXIT_OK } else { EXIT_FAILED });
            }
        }
    }
    Ok(EXIT_OK)
}

/// Re-verifies a witness file: certificates, search traces (against the
/// preceding certificate), constructions with their certificates, and
/// obstruction reports. Prints one line per block and a verdict.
pub fn verify_witness_text(text: &str, out: &mut dyn Write) -> Result<i32> {
    let blocks = parse_blocks(text)?;
    if blocks.is_empty() {
        return Err(Error::InvalidArgument("no blocks in witness".into()));
    }
    let mut failures = 0;
    let mut last_a: Option<PlMap> = None;
    let mut i = 0;
    while i < blocks.len() {
        let blk = &blocks[i];
        let (used, verdict) = match blk.kind.as_str() {
            "certificate" => {
                let (a, b, cert) = PingPongCertificate::from_block(blk)?;
                let v = verify_certificate(&a, &b, &cert)?;
                last_a = Some(a);
                (1, v.failure)
            }
            "trace" => {
                let trace = SearchTrace::from_block(blk)?;
                let v = match &last_a {
                    Some(a) => trace.recheck(a).err().map(|e| e.to_string()),
                    None => Some("trace without a preceding certificate".into()),
                };
                (1, v)
            }
            "construction" => {
                let n = blk.get_all("h").count();
                let certs = blocks.get(i + 1..i + 1 + n).ok_or_else(|| {
                    Error::CertificateMismatch("construction is missing certificate blocks".into())
                })?;
                (1 + n, check_construction(blk, certs)?)
            }
            "obstruction" => (1, check_obstruction(blk)?),
            other => return Err(Error::CertificateMismatch(format!("unknown block `{other}`"))),
        };
        match &verdict {
            None => say!(out, "block {} ({}): ok", i + 1, blk.kind),
            Some(why) => {
                failures += 1;
                say!(out, "block {} ({}): FAILED: {why}", i + 1, blk.kind);
            }
        }
        i += used;
    }
    say!(out, "{}", if failures == 0 { "VERIFIED" } else { "REJECTED" });
    Ok(if failures == 0 { EXIT_OK } else { EXIT_FAILED })
}

fn int_field(blk: &Block, key: &str) -> Result<u64> {
    blk.get(key)?.parse().map_err(|_| Error::CertificateMismatch(format!("`{key}` is not an integer")))
}

fn check_construction(head: &Block, certs: &[Block]) -> Result<Option<String>> {
    let g: PlMap = head.get("g")?.parse()?;
    let theta = int_field(head, "theta")?;
    let power = match head.get("kind")? {
        "fixed-point" => 1,
        "powerfree" => int_field(head, "power")?,
        other => return Ok(Some(format!("unknown construction kind `{other}`"))),
    };
    let g_theta = g.power(theta as i64);
    let mut c_expect = g_theta.clone();
    for (j, c) in head.get_all("conjugator").enumerate() {
        let c: PlMap = c.parse()?;
        if c != c_expect {
            return Ok(Some(format!("conjugator {} is not g^({} theta)", j + 1, j + 1)));
        }
        if !c.commutes(&g) {
            return Ok(Some(format!("conjugator {} does not commute with g", j + 1)));
        }
        c_expect = c_expect.compose(&g_theta);
    }
    let hs: Vec<&str> = head.get_all("h").collect();
    let rhos: Vec<&str> = head.get_all("rho").collect();
    if hs.len() != rhos.len() {
        return Ok(Some("h and rho lines do not pair up".into()));
    }
    for (i, ((h, rho), blk)) in hs.iter().zip(&rhos).zip(certs).enumerate() {
        let h: PlMap = h.parse()?;
        let rho: u64 = rho.parse().map_err(|_| Error::CertificateMismatch("rho is not an integer".into()))?;
        let (a, b, cert) = PingPongCertificate::from_block(blk)?;
        if a != g.compose(&h).power(power as i64) {
            return Ok(Some(format!("certificate {} is not for (g h)^{power}", i + 1)));
        }
        if rho == 0 || theta % rho != 0 || b != g.power(rho as i64) {
            return Ok(Some(format!("certificate {} is not for g^rho with rho dividing theta", i + 1)));
        }
        for other in [&b, &g_theta] {
            if let Some(f) = verify_certificate(&a, other, &cert)?.failure {
                return Ok(Some(format!("certificate {}: {f}", i + 1)));
            }
        }
    }
    Ok(None)
}

fn check_obstruction(blk: &Block) -> Result<Option<String>> {
    let triple = blk.get("triple")?;
    if triple == "none" {
        return Ok(Some("no triple intersection recorded".into()));
    }
    let mut i = None;
    let mut js = Vec::new();
    let mut p = None;
    for part in triple.split_whitespace() {
        match part.split_once('=') {
            Some(("i", v)) => i = v.parse::<usize>().ok(),
            Some(("j", v)) => js = v.split(',').filter_map(|s| s.parse::<usize>().ok()).collect(),
            Some(("point", v)) => p = Some(point(v)?),
            _ => {}
        }
    }
    let (Some(i), Some(p)) = (i, p) else {
        return Err(Error::CertificateMismatch(format!("malformed triple `{triple}`")));
    };
    for j in &js {
        let set: ArcSet = blk.get(&format!("x_{i}{j}"))?.parse()?;
        if !set.contains(&p) {
            return Ok(Some(format!("{p} is not in X_{i}{j}")));
        }
    }
    if js.len() != 3 {
        return Ok(Some("triple does not name three sets".into()));
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("thompson").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn basic_commands() {
        assert_eq!(run_str(&["rotnum", "r"]), (0, "1/2\n".into(), String::new()));
        assert_eq!(run_str(&["fix", "x1"]).1, "[0,1/2]\n");
        assert_eq!(run_str(&["supp", "x2"]).1, "(3/4,1)\n");
        assert_eq!(run_str(&["commutes", "x1", "g1"]).1, "true\n");
        assert_eq!(run_str(&["eval", "x0", "--at", "1/8"]).1, "1/4\n");
        assert_eq!(run_str(&["compose", "r", "r"]).1, run_str(&["eval", "e"]).1);
        let (code, out, _) = run_str(&["rotnum", "r x0", "--orbit"]);
        assert_eq!(code, 0);
        assert!(out.contains("orbit"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["rotnum"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["rotnum", "y7"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["construct-fixedpoint", "--set", "Q"]).0, EXIT_USAGE);
    }

    #[test]
    fn lists_and_terms() {
        assert_eq!(split_list("plmap{(0,0),(1/4,1/2),(1/2,3/4)}, x1"), vec!["plmap{(0,0),(1/4,1/2),(1/2,3/4)}", "x1"]);
        let t = weighted("1 + g1 + 1/2*g2 + g1").unwrap();
        assert_eq!(t.terms().len(), 3);
        assert_eq!(t.l1_norm(), crate::exact::rat(7, 2));
    }

    #[test]
    fn pi_check_verdicts() {
        let (code, out, _) = run_str(&["pi-check", "--h1", "g1,g2,x1,x2", "--h2", "e,e,g1 x1,g2 x2"]);
        assert_eq!((code, out.as_str()), (0, "EQUAL\n"));
        let (code, out, _) = run_str(&["pi-check", "--h1", "H1", "--h2", "e,g1 x1,g2 x2"]);
        assert_eq!(code, EXIT_FAILED);
        assert!(out.starts_with("DIFFERENT\nwitness cell"));
    }

    #[test]
    fn witness_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.txt");
        let p = path.to_str().unwrap();
        let (code, _, err) = run_str(&["pingpong-search", "x0", "r x0 r^-1", "--emit-witness", p]);
        assert_eq!(code, 0, "{err}");
        let (code, out, _) = run_str(&["verify-cert", p]);
        assert_eq!(code, 0);
        assert!(out.ends_with("VERIFIED\n"));

        let text = fs::read_to_string(&path).unwrap();
        let bad = text.replacen("x_a = ", "x_a = {1/3} ", 1);
        let bad_path = dir.path().join("bad.txt");
        fs::write(&bad_path, bad).unwrap();
        assert_ne!(run_str(&["verify-cert", bad_path.to_str().unwrap()]).0, 0);
    }
}
