use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use coalg_core::{
    char_p_comultiplications, check_algebra, check_bialgebra, check_coalgebra, classify_circulant,
    classify_trig, coalgebra_isomorphisms_with_budget, count_units_with_budget, dft_basis, dualize,
    element_inverse, format_vector, group_algebra, grouplikes_with_budget, parse_field,
    search_bialgebras, AxiomReport, Classification, Coalgebra, Error, Field, FieldElement,
    MulTable, SearchOptions, StructureFile, DEFAULT_ELEMENT_BUDGET, DEFAULT_SEARCH_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "coalg",
    version,
    about = "Exact computations with coalgebras, algebras and bialgebras"
)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    format: Format,
    /// Omit timing lines.
    #[arg(long, global = true)]
    quiet: bool,
    /// Worker threads for searches.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of every structure in a file.
    Check { file: PathBuf },
    /// List the grouplike elements of a coalgebra.
    Grouplikes {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_BUDGET)]
        budget: u128,
    },
    /// Find every bialgebra multiplication on a coalgebra.
    Search {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u128,
        /// Also write each structure as a file into this directory.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Classify bialgebra structures on a named coalgebra.
    Classify {
        #[command(subcommand)]
        target: Target,
    },
    /// Units of the group algebra of Z/n.
    Units {
        #[arg(long)]
        group_order: usize,
        #[arg(long)]
        field: String,
        #[arg(long, conflicts_with = "invert")]
        count: bool,
        /// Comma-separated coefficients of an element to invert.
        #[arg(long, allow_hyphen_values = true)]
        invert: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_BUDGET)]
        budget: u128,
    },
    /// The Fourier basis `F_j = (1/p) sum_i w^(ij) e_i`.
    Dft {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
    },
    /// Print the dual structures in file format.
    Dualize { file: PathBuf },
    /// List the coalgebra isomorphisms between two files.
    Iso {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_BUDGET)]
        budget: u128,
    },
}

#[derive(Subcommand)]
enum Target {
    /// The coalgebra spanned by `c` and `s`.
    Trig {
        #[arg(long)]
        field: String,
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// The dual of the group algebra of Z/p.
    Circulant {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        field: String,
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
}

/// Exit status and the text written to stdout.
struct Outcome {
    code: u8,
    out: String,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Run = Result<Outcome, Failure>;

struct Ctx {
    format: Format,
    quiet: bool,
    jobs: usize,
    out: String,
}

impl Ctx {
    fn human(&self) -> bool {
        self.format == Format::Human
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn record<I, S>(&mut self, kind: &str, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        self.out.push_str(kind);
        for x in fields {
            self.out.push('\t');
            self.out.push_str(x.as_ref());
        }
        self.out.push('\n');
    }

    fn timing(&mut self, label: &str, start: Instant) {
        if self.human() && !self.quiet {
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let _ = writeln!(self.out, "{label} time: {ms:.1} ms");
        }
    }

    fn done(self, code: u8) -> Run {
        Ok(Outcome {
            code,
            out: self.out,
        })
    }
}

fn encode(f: &Field, v: &[FieldElement]) -> Vec<String> {
    v.iter().map(|x| f.format(x)).collect()
}

fn field(spec: &str) -> Result<Field, Failure> {
    Ok(parse_field(spec)?)
}

fn read(path: &Path) -> Result<StructureFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    text.parse()
        .map_err(|e: Error| Failure::Usage(format!("{}: {e}", path.display())))
}

fn coalgebra_of(path: &Path, file: StructureFile) -> Result<Coalgebra, Failure> {
    file.coalgebra.ok_or_else(|| {
        Failure::Usage(format!(
            "{}: no coalgebra (delta/eps) block",
            path.display()
        ))
    })
}

/// Splits a comma-separated list of literals, keeping `[..]` literals whole.
fn parse_vector(f: &Field, s: &str) -> Result<Vec<FieldElement>, Failure> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0usize, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    Ok(parts
        .into_iter()
        .map(|p| f.parse_element(p))
        .collect::<Result<_, _>>()?)
}

fn report(ctx: &mut Ctx, what: &str, names: &[String], r: &AxiomReport) {
    let verdict = if r.passed() { "PASS" } else { "FAIL" };
    if ctx.human() {
        ctx.line(format!("{what} axioms: {verdict}"));
        for v in &r.violations {
            let at: Vec<&str> = v.witness.iter().map(|&i| names[i].as_str()).collect();
            if at.is_empty() {
                ctx.line(format!("  {} fails", v.law));
            } else {
                ctx.line(format!("  {} fails at ({})", v.law, at.join(", ")));
            }
        }
    } else {
        ctx.record("check", [what, verdict]);
        for v in &r.violations {
            let mut fields = vec![what.to_string(), v.law.to_string()];
            fields.extend(v.witness.iter().map(|i| i.to_string()));
            ctx.record("violation", fields);
        }
    }
}

fn check(ctx: Ctx, path: &Path) -> Run {
    let mut ctx = ctx;
    let file = read(path)?;
    let mut failed = false;
    if let Some(c) = &file.coalgebra {
        let r = check_coalgebra(c);
        failed |= !r.passed();
        report(&mut ctx, "coalgebra", &file.names, &r);
    }
    if let Some(a) = &file.algebra {
        let r = check_algebra(a);
        failed |= !r.passed();
        report(&mut ctx, "algebra", &file.names, &r);
    }
    if let (Some(a), Some(c)) = (&file.algebra, &file.coalgebra) {
        let r = check_bialgebra(a, c)?;
        failed |= !r.passed();
        report(&mut ctx, "bialgebra", &file.names, &r);
    }
    ctx.done(u8::from(failed))
}

fn list_grouplikes(mut ctx: Ctx, path: &Path, budget: u128) -> Run {
    let c = coalgebra_of(path, read(path)?)?;
    let g = grouplikes_with_budget(&c, budget)?;
    let f = c.field();
    if ctx.human() {
        ctx.line(format!("{} grouplike elements", g.len()));
        for x in &g {
            ctx.line(format!("  {}", format_vector(f, c.names(), x)));
        }
    } else {
        for x in &g {
            ctx.record("grouplike", encode(f, x));
        }
    }
    ctx.done(0)
}

fn print_tables(ctx: &mut Ctx, tables: &[MulTable]) {
    for (n, t) in tables.iter().enumerate() {
        if ctx.human() {
            ctx.line(format!("structure {}:", n + 1));
            for l in t.describe() {
                ctx.line(format!("  {l}"));
            }
        } else {
            let f = t.algebra().field();
            let mut fields = encode(f, t.algebra().constants());
            fields.extend(encode(f, t.unit()));
            ctx.record("table", fields);
        }
    }
}

fn write_tables(dir: &Path, tables: &[MulTable]) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Usage(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    for (n, t) in tables.iter().enumerate() {
        let file = StructureFile::from_pair(t.algebra(), t.coalgebra());
        std::fs::write(
            dir.join(format!("structure_{:03}.coalg", n + 1)),
            file.to_string(),
        )
        .map_err(io)?;
    }
    Ok(())
}

fn search(mut ctx: Ctx, path: &Path, budget: u128, output_dir: Option<&Path>) -> Run {
    let c = coalgebra_of(path, read(path)?)?;
    let start = Instant::now();
    let options = SearchOptions {
        budget,
        jobs: ctx.jobs,
    };
    let tables = search_bialgebras(&c, &options)?;
    if ctx.human() {
        ctx.line(format!("{} structures found", tables.len()));
    } else {
        ctx.record("found", [tables.len().to_string()]);
    }
    print_tables(&mut ctx, &tables);
    if let Some(dir) = output_dir {
        write_tables(dir, &tables)?;
    }
    ctx.timing("search", start);
    ctx.done(0)
}

fn classification(ctx: &mut Ctx, cls: &Classification) -> Result<Vec<MulTable>, Failure> {
    let tables = match cls {
        Classification::OneParamFamily(fam) => {
            if ctx.human() {
                ctx.line(format!("one-parameter family: {}", fam.description()));
            } else {
                ctx.record("family", [fam.description()]);
            }
            match cls.materialize() {
                Ok(t) => t,
                Err(Error::InfiniteField(_)) => Vec::new(),
                Err(e) => return Err(e.into()),
            }
        }
        _ => cls.materialize()?,
    };
    if ctx.human() {
        ctx.line(format!("{} bialgebra structures", tables.len()));
    } else {
        ctx.record("found", [tables.len().to_string()]);
    }
    print_tables(ctx, &tables);
    Ok(tables)
}

fn classify(mut ctx: Ctx, target: &Target) -> Run {
    let start = Instant::now();
    let (tables, output_dir) = match target {
        Target::Trig {
            field: spec,
            output_dir,
        } => {
            let f = field(spec)?;
            (classification(&mut ctx, &classify_trig(&f)?)?, output_dir)
        }
        Target::Circulant {
            p,
            field: spec,
            output_dir,
        } => {
            let f = field(spec)?;
            let cls = classify_circulant(&f, *p)?;
            let tables = classification(&mut ctx, &cls)?;
            if f.characteristic() == *p as u64 && f.is_finite() {
                let options = SearchOptions {
                    jobs: ctx.jobs,
                    ..SearchOptions::default()
                };
                let fam = char_p_comultiplications(&f, *p, &options)?;
                if let Some(d) = fam.discrepancy() {
                    if ctx.human() {
                        ctx.line(d.to_string());
                    } else {
                        ctx.record(
                            "discrepancy",
                            [d.found.to_string(), d.predicted.to_string()],
                        );
                    }
                }
            }
            (tables, output_dir)
        }
    };
    if let Some(dir) = output_dir {
        write_tables(dir, &tables)?;
    }
    ctx.timing("classify", start);
    ctx.done(0)
}

fn units(mut ctx: Ctx, n: usize, spec: &str, invert: Option<&str>, budget: u128) -> Run {
    if n == 0 {
        return Err(Failure::Usage("--group-order must be positive".into()));
    }
    let f = field(spec)?;
    let (a, _) = group_algebra(&f, n);
    match invert {
        Some(literal) => {
            let x = parse_vector(&f, literal)?;
            if x.len() != n {
                return Err(Failure::Usage(format!(
                    "--invert needs {n} coefficients, got {}",
                    x.len()
                )));
            }
            match element_inverse(&a, &x) {
                Some(y) if ctx.human() => {
                    ctx.line(format!("inverse: {}", format_vector(&f, a.names(), &y)))
                }
                Some(y) => ctx.record("inverse", encode(&f, &y)),
                None if ctx.human() => ctx.line("not a unit"),
                None => ctx.record("inverse", ["none"]),
            }
        }
        None => {
            let count = count_units_with_budget(&a, budget)?;
            if ctx.human() {
                ctx.line(format!("{count} units"));
            } else {
                ctx.record("units", [count.to_string()]);
            }
        }
    }
    ctx.done(0)
}

fn dft(mut ctx: Ctx, p: usize, spec: &str, omega: Option<&str>) -> Run {
    let f = field(spec)?;
    let w = match omega {
        Some(s) => f.parse_element(s)?,
        None => f.primitive_root_of_unity(p as u64).ok_or_else(|| {
            Failure::Usage(format!("{f} has no primitive root of unity of order {p}"))
        })?,
    };
    let basis = dft_basis(&f, p, &w)?;
    if ctx.human() {
        ctx.line(format!("omega = {}", f.format(&w)));
        let names: Vec<String> = (0..p).map(|i| format!("e{i}")).collect();
        for j in 0..p {
            ctx.line(format!(
                "F{j} = {}",
                format_vector(&f, &names, &basis.column(j))
            ));
        }
    } else {
        ctx.record("omega", [f.format(&w)]);
        for j in 0..p {
            ctx.record("basis", encode(&f, &basis.column(j)));
        }
    }
    ctx.done(0)
}

fn dual(mut ctx: Ctx, path: &Path) -> Run {
    let file = read(path)?;
    let out = StructureFile {
        coalgebra: file.algebra.as_ref().map(dualize),
        algebra: file.coalgebra.as_ref().map(dualize),
        ..file
    };
    if ctx.human() {
        ctx.out.push_str(&out.to_string());
    } else {
        let f = &out.field;
        if let Some(c) = &out.coalgebra {
            let mut fields = encode(f, c.constants());
            fields.extend(encode(f, c.counit()));
            ctx.record("coalgebra", fields);
        }
        if let Some(a) = &out.algebra {
            let mut fields = encode(f, a.constants());
            fields.extend(encode(f, a.unit()));
            ctx.record("algebra", fields);
        }
    }
    ctx.done(0)
}

fn iso(mut ctx: Ctx, p1: &Path, p2: &Path, budget: u128) -> Run {
    let c1 = coalgebra_of(p1, read(p1)?)?;
    let c2 = coalgebra_of(p2, read(p2)?)?;
    let start = Instant::now();
    let isos = coalgebra_isomorphisms_with_budget(&c1, &c2, budget)?;
    let f = c1.field();
    if ctx.human() {
        ctx.line(format!("{} isomorphisms", isos.len()));
        for m in &isos {
            ctx.line("  [");
            for r in 0..m.rows() {
                ctx.line(format!("    {}", encode(f, m.row(r)).join(" ")));
            }
            ctx.line("  ]");
        }
    } else {
        ctx.record("found", [isos.len().to_string()]);
        for m in &isos {
            ctx.record("iso", encode(f, m.entries()));
        }
    }
    ctx.timing("iso", start);
    ctx.done(0)
}

fn dispatch(cli: Cli) -> Run {
    let ctx = Ctx {
        format: cli.format,
        quiet: cli.quiet,
        jobs: cli.jobs as usize,
        out: String::new(),
    };
    match &cli.command {
        Command::Check { file } => check(ctx, file),
        Command::Grouplikes { file, budget } => list_grouplikes(ctx, file, *budget),
        Command::Search {
            file,
            budget,
            output_dir,
        } => search(ctx, file, *budget, output_dir.as_deref()),
        Command::Classify { target } => classify(ctx, target),
        Command::Units {
            group_order,
            field,
            invert,
            budget,
            ..
        } => units(ctx, *group_order, field, invert.as_deref(), *budget),
        Command::Dft { p, field, omega } => dft(ctx, *p, field, omega.as_deref()),
        Command::Dualize { file } => dual(ctx, file),
        Command::Iso {
            file1,
            file2,
            budget,
        } => iso(ctx, file1, file2, *budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(o) => {
            print!("{}", o.out);
            ExitCode::from(o.code)
        }
        Err(Failure::Core(e @ Error::BudgetExceeded { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
