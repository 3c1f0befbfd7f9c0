//! Command-line front end for `addiso-core`.
//!
//! [`run_args`] parses arguments, reads input and returns the exit code with
//! the report text, so the binary and the tests share one path.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use addiso_core::characters::{
    coordinate_weight_identity, dual_map_diagram_commutes, weight_representation_check, KCharacter,
};
use addiso_core::codes::{check_dim_sum, space_tuple, weight_distribution};
use addiso_core::isometry::{
    is_extendible_bruteforce, is_extendible_tuples, is_isometry_criterion, is_isometry_direct,
};
use addiso_core::kspace::{all_points, KMatrix};
use addiso_core::solutions::{
    build_counterexample, check_covering_bound, classify_min_coverings, classify_pair, indicator_table,
    matches_family_a, search_nontrivial,
};
use addiso_core::sweep::{sweep_theorem, SweepParams, DEFAULT_BUDGET};
use addiso_core::text::{
    field_descriptor, format_lelem, format_map, format_report, format_subspace, parse_code, parse_field, parse_map,
};
use addiso_core::{make_field_pair, Error, FieldK, FieldL, GenMatrix, KSubspace, SpaceTuple};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Human,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "addiso", version, about = "Additive codes, isometries and their extensions")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Seed for randomized sampling.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Describe a field pair K ⊂ L.
    FieldInfo {
        #[arg(long)]
        field: String,
    },
    /// Column spaces, weight distribution and indicator table of a code file.
    AnalyzeCode { input: Option<PathBuf> },
    /// Decide isometry and extendibility of a map file.
    CheckMap { input: Option<PathBuf> },
    /// Run the character identity checks.
    VerifyCharacters {
        /// Random (A, u) instances for the weight representation.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Emit an unextendible isometry as a map file.
    Counterexample {
        #[arg(long)]
        field: String,
        #[arg(long)]
        m: usize,
    },
    /// Covering bound and minimal coverings of K^dim.
    Coverings {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        dim: usize,
    },
    /// Nontrivial solutions of the indicator-sum equation.
    Solutions {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        dim_hypothesis: bool,
    },
    /// Exhaustive sweep over codes and isometries.
    Sweep {
        #[arg(long)]
        field: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        max_k: usize,
        #[arg(long, default_value_t = 1)]
        sample_oracle: usize,
        #[arg(long)]
        dedup: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        /// Unextendible instances kept in the report.
        #[arg(long, default_value_t = 16)]
        witnesses: usize,
    },
}

/// Parses `args` (including the program name), reads any input file (or
/// calls `stdin` when the path is absent or `-`), and runs the command.
pub fn run_args<I, T>(args: I, stdin: impl FnOnce() -> std::io::Result<String>) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let input = match &cli.command {
        Command::AnalyzeCode { input } | Command::CheckMap { input } => match input {
            Some(p) if p.as_os_str() != "-" => match std::fs::read_to_string(p) {
                Ok(t) => t,
                Err(e) => return (EXIT_INVALID, format!("error: cannot read {}: {e}\n", p.display())),
            },
            _ => match stdin() {
                Ok(t) => t,
                Err(e) => return (EXIT_INVALID, format!("error: cannot read stdin: {e}\n")),
            },
        },
        _ => String::new(),
    };
    run(&cli, &input)
}

/// Runs a parsed command on already-loaded input text.
pub fn run(cli: &Cli, input: &str) -> (i32, String) {
    match dispatch(cli, input) {
        Ok(out) => out,
        Err(e) => (exit_code(&e), format!("error: {e}\n")),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::VerificationFailed(_) => EXIT_VERIFICATION,
        _ => EXIT_INVALID,
    }
}

fn threads() -> Option<usize> {
    std::env::var("ADDISO_THREADS").ok().and_then(|v| v.trim().parse().ok()).filter(|&t| t > 0)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(cli: &Cli, input: &str) -> addiso_core::Result<(i32, String)> {
    let machine = cli.format == Format::Machine;
    match &cli.command {
        Command::FieldInfo { field } => field_info(&parse_field(field)?, machine).map(ok),
        Command::AnalyzeCode { .. } => analyze_code(&parse_code(input)?, machine).map(ok),
        Command::CheckMap { .. } => check_map(input, machine),
        Command::VerifyCharacters { samples } => verify_characters(cli.seed, *samples, machine),
        Command::Counterexample { field, m } => {
            let f = build_counterexample(&parse_field(field)?, *m)?;
            Ok(ok(format_map(&f)))
        }
        Command::Coverings { q, dim } => coverings(&FieldK::with_order(*q)?, *dim, machine).map(ok),
        Command::Solutions { q, k, m, dim_hypothesis } => {
            solutions(&FieldK::with_order(*q)?, *k, *m, *dim_hypothesis, machine).map(ok)
        }
        Command::Sweep { field, m, max_k, sample_oracle, dedup, budget, witnesses } => {
            let field = parse_field(field)?;
            if *m == 0 {
                return Err(Error::Invalid("m must be positive".into()));
            }
            let params = SweepParams {
                m: *m,
                max_k: *max_k,
                sample_oracle: *sample_oracle,
                dedup: *dedup,
                threads: threads(),
                budget: *budget,
                witness_limit: Some(*witnesses),
            };
            let report = sweep_theorem(&field, &params)?;
            if machine {
                return Ok(ok(format_report(&report)));
            }
            let mut s = String::new();
            let _ = writeln!(s, "field: {}", field_descriptor(&report.field));
            let _ = writeln!(s, "m: {}  max_k: {}  dedup: {}", report.m, report.max_k, yes(report.dedup));
            let _ = writeln!(s, "codes: {}", report.codes);
            let _ = writeln!(s, "isometries: {}", report.isometries);
            let _ = writeln!(s, "extendible: {}", report.extendible);
            let _ = writeln!(s, "unextendible: {}", report.unextendible);
            let _ = writeln!(s, "oracle checked: {}", report.oracle_checked);
            for (i, w) in report.witnesses.iter().enumerate() {
                let _ = writeln!(s, "\nwitness {}:", i + 1);
                s.push_str(&format_map(w));
            }
            Ok(ok(s))
        }
    }
}

fn ok(s: String) -> (i32, String) {
    (EXIT_OK, s)
}

fn field_info(l: &FieldL, machine: bool) -> addiso_core::Result<String> {
    let k = l.subfield();
    let mut s = String::new();
    if machine {
        let _ = writeln!(s, "field {}", field_descriptor(l));
        let _ = writeln!(s, "p {}\nd {}\nn {}\nq {}\norder {}", k.p(), k.degree(), l.degree(), k.order(), l.order());
        return Ok(s);
    }
    let _ = writeln!(s, "field: {}", field_descriptor(l));
    let _ = writeln!(s, "K = GF({}), p = {}, d = {}", k.order(), k.p(), k.degree());
    let _ = writeln!(s, "L = GF({}), [L:K] = {}", l.order(), l.degree());
    let _ = writeln!(s, "K modulus (low to high): {:?}", k.modulus());
    let h: Vec<u32> = l.modulus().iter().map(|c| c.index()).collect();
    let _ = writeln!(s, "L modulus over K (low to high): {h:?}");
    if l.degree() > 1 {
        let a = l.alpha();
        let powers: Vec<String> = (0..=l.degree() as u64).map(|e| format_lelem(l, &l.pow(&a, e))).collect();
        let _ = writeln!(s, "powers of alpha: {}", powers.join(" "));
    }
    Ok(s)
}

fn tuple_lines(s: &mut String, name: &str, t: &SpaceTuple) {
    for (i, v) in t.spaces().iter().enumerate() {
        let _ = writeln!(s, "  {name}{} = {}  (dim {})", i + 1, format_subspace(v), v.dim());
    }
}

fn analyze_code(a: &GenMatrix, machine: bool) -> addiso_core::Result<String> {
    let kf = a.subfield();
    let tuple = space_tuple(a);
    let dist = weight_distribution(a)?;
    let table = indicator_table(kf, &tuple)?;
    let dist_s = dist.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    if machine {
        let _ = writeln!(s, "field {}\nk {}\nm {}", field_descriptor(a.field()), a.k(), a.m());
        for (i, v) in tuple.spaces().iter().enumerate() {
            let _ = writeln!(s, "column_space {} {}", i + 1, format_subspace(v));
        }
        let _ = writeln!(s, "dim_sum_check {}", yes(check_dim_sum(a)));
        let _ = writeln!(s, "weight_distribution {dist_s}");
        let table_s = table.values().iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(s, "indicator_table {table_s}");
        return Ok(s);
    }
    let _ = writeln!(s, "field: {}", field_descriptor(a.field()));
    let _ = writeln!(s, "k = {}, m = {}", a.k(), a.m());
    let _ = writeln!(s, "column spaces:");
    tuple_lines(&mut s, "V", &tuple);
    let _ = writeln!(s, "sum of dims = k: {}", yes(check_dim_sum(a)));
    let _ = writeln!(s, "weight distribution (0..m): {dist_s}");
    Ok(s)
}

fn witness_lines(s: &mut String, maps: &[KMatrix], perm: &[usize], machine: bool) {
    let fmt = |g: &KMatrix| {
        let rows: Vec<String> = g
            .row_vecs()
            .iter()
            .map(|r| format!("({})", r.iter().map(|c| c.index().to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        format!("[{}]", rows.join(","))
    };
    let perm_s = perm.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(" ");
    if machine {
        let _ = writeln!(s, "witness_perm {perm_s}");
        for (i, g) in maps.iter().enumerate() {
            let _ = writeln!(s, "witness_map {} {}", i + 1, fmt(g));
        }
    } else {
        let _ = writeln!(s, "witness: coordinate i of the image reads coordinate perm(i) of the source");
        let _ = writeln!(s, "  perm = ({perm_s})");
        for (i, g) in maps.iter().enumerate() {
            let _ = writeln!(s, "  g{} = {}", i + 1, fmt(g));
        }
    }
}

fn check_map(input: &str, machine: bool) -> addiso_core::Result<(i32, String)> {
    let f = parse_map(input)?;
    let kf = f.source().subfield();
    let direct = is_isometry_direct(&f)?;
    let criterion = is_isometry_criterion(&f)?;
    let tuples = is_extendible_tuples(&f);
    let witness = is_extendible_bruteforce(&f)?;
    let (vt, ut) = (f.source_tuple(), f.image_tuple());
    let tables_equal = indicator_table(kf, &vt)? == indicator_table(kf, &ut)?;
    let mut s = String::new();
    if machine {
        let _ = writeln!(s, "field {}", field_descriptor(f.field()));
        for (i, v) in vt.spaces().iter().enumerate() {
            let _ = writeln!(s, "source_space {} {}", i + 1, format_subspace(v));
        }
        for (i, u) in ut.spaces().iter().enumerate() {
            let _ = writeln!(s, "image_space {} {}", i + 1, format_subspace(u));
        }
        let _ = writeln!(s, "indicator_tables_equal {}", yes(tables_equal));
        let _ = writeln!(s, "isometry_direct {}\nisometry_criterion {}", yes(direct), yes(criterion));
        let _ = writeln!(s, "extendible_tuples {}\nextendible_witness {}", yes(tuples), yes(witness.is_some()));
    } else {
        let _ = writeln!(s, "field: {}", field_descriptor(f.field()));
        let _ = writeln!(s, "source column spaces:");
        tuple_lines(&mut s, "V", &vt);
        let _ = writeln!(s, "image column spaces:");
        tuple_lines(&mut s, "U", &ut);
        let _ = writeln!(s, "indicator tables equal: {}", yes(tables_equal));
        let _ = writeln!(s, "isometry (direct / criterion): {} / {}", yes(direct), yes(criterion));
        let _ = writeln!(s, "extendible (tuples / witness search): {} / {}", yes(tuples), yes(witness.is_some()));
        let _ = writeln!(s, "isometry: {}; extendible: {}", yes(direct), yes(witness.is_some()));
    }
    if let Some(w) = &witness {
        witness_lines(&mut s, w.maps(), w.perm(), machine);
    }
    if direct != criterion || tuples != witness.is_some() {
        let _ = writeln!(s, "VERIFICATION FAILED: the two methods disagree on this map");
        s.push_str(&format_map(&f));
        return Ok((EXIT_VERIFICATION, s));
    }
    Ok(ok(s))
}

/// Every field pair with `|L| ≤ 64` and characteristic at most 13.
fn small_field_pairs() -> Vec<(u64, usize, usize)> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        for d in 1..=6usize {
            for n in 1..=6usize {
                if p.checked_pow((d * n) as u32).is_some_and(|o| o <= 64) {
                    out.push((p, d, n));
                }
            }
        }
    }
    out
}

fn random_code(rng: &mut ChaCha8Rng, l: &FieldL, k: usize, m: usize) -> addiso_core::Result<GenMatrix> {
    let order = l.order();
    loop {
        let rows = (0..k).map(|_| (0..m).map(|_| l.from_index(rng.gen_range(0..order))).collect()).collect();
        match GenMatrix::new(l, m, rows) {
            Ok(a) => return Ok(a),
            Err(Error::DependentRows { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
}

struct Tally {
    name: &'static str,
    passed: u64,
    failed: u64,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, passed: 0, failed: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.first_failure.get_or_insert_with(what);
        }
    }
}

fn verify_characters(seed: u64, samples: usize, machine: bool) -> addiso_core::Result<(i32, String)> {
    let mut coord = Tally::new("coordinate_weight_identity");
    for (p, d, n) in small_field_pairs() {
        let (_, l) = make_field_pair(p, d, n, None, None)?;
        for a in l.elements()? {
            let ok = coordinate_weight_identity(&l, &a)?;
            coord.record(ok, || format!("{} element {}", field_descriptor(&l), format_lelem(&l, &a)));
        }
    }

    let mut ex2 = Tally::new("weight_representation_example");
    let (_, f4) = make_field_pair(2, 1, 2, None, None)?;
    let (o, i, w) = (f4.zero(), f4.one(), f4.alpha());
    let a = GenMatrix::new(
        &f4,
        3,
        vec![vec![i.clone(), i.clone(), o.clone()], vec![w.clone(), w, o.clone()], vec![i.clone(), o, i]],
    )?;
    for u in all_points(a.subfield(), 3)? {
        ex2.record(weight_representation_check(&a, &u)?, || format!("u = {u:?}"));
    }

    let mut random = Tally::new("weight_representation_random");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fields = [make_field_pair(2, 1, 2, None, None)?.1, make_field_pair(3, 1, 2, None, None)?.1];
    for _ in 0..samples {
        let l = &fields[rng.gen_range(0..fields.len())];
        let k = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=4);
        let a = random_code(&mut rng, l, k.min(2 * m), m)?;
        let u: Vec<_> = (0..a.k()).map(|_| a.subfield().from_index(rng.gen_range(0..a.subfield().order()))).collect();
        let ok = weight_representation_check(&a, &u)?;
        random.record(ok, || format!("{}u = {u:?}", addiso_core::text::format_code(&a)));
    }

    let mut diagram = Tally::new("dual_map_diagram");
    let f2 = FieldK::prime(2)?;
    for k in 1..=2 {
        for n in 1..=2 {
            for bits in 0u32..(1 << (k * n)) {
                let data = (0..k * n).map(|b| f2.from_index((bits >> b) & 1)).collect();
                let mt = KMatrix::from_data(k, n, data)?;
                for choice in [KCharacter::Trace, KCharacter::ConstantCoefficient] {
                    diagram.record(dual_map_diagram_commutes(&f2, choice, &mt)?, || format!("{mt:?}"));
                }
            }
        }
    }

    let tallies = [coord, ex2, random, diagram];
    let mut s = String::new();
    let mut failed = false;
    for t in &tallies {
        failed |= t.failed > 0;
        if machine {
            let _ = writeln!(s, "{} {} {}", t.name, t.passed, t.failed);
        } else {
            let _ = writeln!(s, "{}: {} passed, {} failed", t.name, t.passed, t.failed);
        }
        if let Some(f) = &t.first_failure {
            let _ = writeln!(s, "first failure in {}:\n{f}", t.name);
        }
    }
    Ok((if failed { EXIT_VERIFICATION } else { EXIT_OK }, s))
}

fn coverings(field: &FieldK, dim: usize, machine: bool) -> addiso_core::Result<String> {
    if dim < 2 {
        return Err(Error::Invalid("coverings needs --dim >= 2".into()));
    }
    let bound = check_covering_bound(field, dim)?;
    let covers = classify_min_coverings(field, &KSubspace::full(dim))?;
    let mut s = String::new();
    if machine {
        let _ = writeln!(s, "q {}\ndim {}", field.order(), dim);
        let _ = writeln!(s, "bound_holds {}\nbound_checked {}", yes(bound.holds), bound.checked);
        let _ = writeln!(s, "minimal_coverings {}", covers.len());
        for c in &covers {
            let members: Vec<String> = c.members.iter().map(format_subspace).collect();
            let _ = writeln!(s, "covering {} {}", format_subspace(&c.center), members.join(" "));
        }
        return Ok(s);
    }
    let _ = writeln!(s, "K = GF({}), ambient dimension {}", field.order(), dim);
    let _ = writeln!(
        s,
        "no {} hyperplanes cover K^{dim}: {} ({} multisets checked)",
        field.order(),
        yes(bound.holds),
        bound.checked
    );
    let _ = writeln!(s, "coverings by {} proper subspaces: {}", field.order() + 1, covers.len());
    for c in &covers {
        let _ = writeln!(s, "  through S = {}:", format_subspace(&c.center));
        for h in &c.members {
            let _ = writeln!(s, "    {}", format_subspace(h));
        }
    }
    Ok(s)
}

fn solutions(field: &FieldK, k: usize, m: usize, dim_hypothesis: bool, machine: bool) -> addiso_core::Result<String> {
    let pairs = search_nontrivial(field, k, m, dim_hypothesis)?;
    let mut s = String::new();
    let join = |t: &SpaceTuple| t.spaces().iter().map(format_subspace).collect::<Vec<_>>().join(" ");
    if machine {
        let _ = writeln!(s, "q {}\nk {k}\nm {m}\ndim_hypothesis {}", field.order(), yes(dim_hypothesis));
        let _ = writeln!(s, "pairs {}", pairs.len());
    } else {
        let _ = writeln!(s, "K = GF({}), k = {k}, m = {m}, dimension hypothesis: {}", field.order(), yes(dim_hypothesis));
        let _ = writeln!(s, "nontrivial solutions: {}", pairs.len());
    }
    for (i, p) in pairs.iter().enumerate() {
        let class = classify_pair(field, p)?;
        let fam = matches_family_a(field, p);
        if machine {
            let _ = writeln!(s, "pair {}\nV {}\nU {}", i + 1, join(&p.v), join(&p.u));
            match &fam {
                Some((v, sub)) => {
                    let _ = writeln!(s, "family_a {} {}", format_subspace(v), format_subspace(sub));
                }
                None => {
                    let _ = writeln!(s, "family_a none");
                }
            }
        } else {
            let _ = writeln!(s, "pair {} ({class:?}):", i + 1);
            let _ = writeln!(s, "  V: {}", join(&p.v));
            let _ = writeln!(s, "  U: {}", join(&p.u));
            if let Some((v, sub)) = &fam {
                let _ = writeln!(s, "  family A with V = {}, S = {}", format_subspace(v), format_subspace(sub));
            }
        }
    }
    Ok(s)
}
