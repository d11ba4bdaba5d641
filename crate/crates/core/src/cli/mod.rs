//! The `nilrigid` command: file formats, subcommands and reports.
//!
//! Exit codes: 0 success, 1 mathematical refutation (the report carries a
//! witness), 2 usage, parse or input errors.

pub mod emit;
pub mod parse;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{Form, SullivanModel};
use crate::cohomology::{betti_by_weight, CohomologyRing};
use crate::error::{Error, Result};
use crate::families;
use crate::free_nilpotent::{free_nilpotent_lie, theorem3_family};
use crate::lie::{
    adapted_basis, associated_graded_model, carnot, ce_model, ce_model_with_weights,
    lower_central_series, LieAlgebra,
};
use crate::morphisms::{
    fingerprint_model, is_decomposable_2form, normalize_perturbation, verify_cdga_morphism,
    verify_cohomology_ring_iso, Decomposability, MorphismVerdict, RingVerdict,
};

pub use emit::{emit_lie, emit_model};
pub use parse::{parse_algebra, parse_algebra_file, Algebra, AlgebraFile};
pub use report::{Report, Status, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "nilrigid", version, about = "Exact cohomology and isomorphism checks for nilpotent Lie algebras")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Replace every loaded model by its associated graded model.
    #[arg(long, global = true)]
    pub associated_graded: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    Theorem1,
    Theorem2,
    Theorem4,
    Section3,
    Free,
    Theorem3,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jacobi identity, d² = 0, nilpotence and triangularity.
    Check { file: PathBuf },
    /// Lower central series dimensions.
    Lcs { file: PathBuf },
    /// Associated Carnot-graded algebra.
    Carnot { file: PathBuf },
    /// The model: generators, weights and differentials.
    Model { file: PathBuf },
    /// Betti numbers.
    Betti { file: PathBuf },
    /// Representative cocycles in one degree.
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        by_weight: bool,
    },
    /// Indecomposable classes (algebra generators) in one degree.
    Generators {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Invariants: LCS quotients, Betti numbers, generator counts.
    Fingerprint { file: PathBuf },
    /// Compare fingerprints; different fingerprints refute isomorphism.
    Compare { a: PathBuf, b: PathBuf },
    /// Verify a generator map is an isomorphism of models.
    VerifyIso {
        src: PathBuf,
        dst: PathBuf,
        map: PathBuf,
    },
    /// Verify a map of cohomology generators is a ring isomorphism.
    VerifyRingIso {
        src: PathBuf,
        dst: PathBuf,
        map: PathBuf,
    },
    /// Absorb a perturbation of d m into the normal form.
    Normalize { src: PathBuf },
    /// Decide whether a 2-form is a product of two 1-forms. Takes an
    /// algebra file with `form` lines or an inline expression.
    Decomposable { form: String },
    /// Print a family as an algebra file (or a map file for `section3 --variant map`).
    Family {
        name: FamilyName,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        gens: Option<usize>,
        #[arg(long)]
        class: Option<usize>,
        #[arg(long)]
        subspace: Option<PathBuf>,
        /// For section3: first, second or map.
        #[arg(long)]
        variant: Option<String>,
    },
}

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let name = command_name(&cli.command);
    let report = execute(&cli).unwrap_or_else(|e| Report::error(name, &e.to_string()));
    let code = report.status.exit_code();
    let body = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    if report.status == Status::Error && cli.format == Format::Text {
        Outcome {
            stdout: String::new(),
            stderr: body,
            code,
        }
    } else {
        Outcome {
            stdout: body,
            stderr: String::new(),
            code,
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Lcs { .. } => "lcs",
        Command::Carnot { .. } => "carnot",
        Command::Model { .. } => "model",
        Command::Betti { .. } => "betti",
        Command::Cohomology { .. } => "cohomology",
        Command::Generators { .. } => "generators",
        Command::Fingerprint { .. } => "fingerprint",
        Command::Compare { .. } => "compare",
        Command::VerifyIso { .. } => "verify-iso",
        Command::VerifyRingIso { .. } => "verify-ring-iso",
        Command::Normalize { .. } => "normalize",
        Command::Decomposable { .. } => "decomposable",
        Command::Family { .. } => "family",
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn with_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

struct Loaded {
    file: AlgebraFile,
    algebra: Algebra,
}

impl Loaded {
    fn model(&self, graded: bool) -> Result<SullivanModel> {
        let m = self.algebra.model()?;
        if graded {
            associated_graded_model(&m)
        } else {
            Ok(m)
        }
    }

    fn lie(&self, graded: bool) -> Result<LieAlgebra> {
        if graded {
            crate::lie::lie_from_model(&self.model(true)?)
        } else {
            self.algebra.lie()
        }
    }
}

fn load(path: &Path) -> Result<Loaded> {
    let text = read(path)?;
    let file = with_file(path, parse_algebra_file(&text))?;
    let algebra = with_file(path, file.build())?;
    Ok(Loaded { file, algebra })
}

fn show(model: &SullivanModel, f: &Form) -> String {
    model.display_form(f)
}

fn execute(cli: &Cli) -> Result<Report> {
    let graded = cli.associated_graded;
    let name = command_name(&cli.command);
    let mut r = Report::new(name);
    r.input("associated_graded", graded);
    match &cli.command {
        Command::Check { file } => {
            r.input("file", file.display().to_string());
            let loaded = load(file)?;
            check(&mut r, &loaded, graded)?;
        }
        Command::Lcs { file } => {
            r.input("file", file.display().to_string());
            let lie = load(file)?.lie(graded)?;
            let chain = lower_central_series(&lie);
            r.output("dims", chain.dims())
                .output("quotient_dims", chain.quotient_dims())
                .output("terminates", chain.terminates);
            r.line(format!("lcs dims: {}", join(&chain.dims())));
            r.line(format!("quotients: {}", join(&chain.quotient_dims())));
            if !chain.terminates {
                r.line("not nilpotent: the series stabilizes");
                r.refute(json!({"stable_dim": chain.dims().last()}));
            }
        }
        Command::Carnot { file } => {
            r.input("file", file.display().to_string());
            let lie = load(file)?.lie(graded)?;
            let car = carnot(&lie)?;
            let weights = adapted_basis(&car)?.weights;
            let text = emit_model(&ce_model_with_weights(&car, &weights)?)?;
            r.output("algebra", &text);
            r.line(text.trim_end());
        }
        Command::Model { file } => {
            r.input("file", file.display().to_string());
            let model = load(file)?.model(graded)?;
            let mut diffs = serde_json::Map::new();
            for g in model.generators() {
                let d = show(&model, model.differential_of(g.index));
                r.line(format!("d({}) = {}    [weight {}]", g.name, d, g.weight));
                diffs.insert(g.name.clone(), json!(d));
            }
            r.output("generators", model.names())
                .output("weights", model.weights())
                .output("differential", diffs)
                .output("carnot_homogeneous", crate::lie::is_carnot_homogeneous(&model));
        }
        Command::Betti { file } => {
            r.input("file", file.display().to_string());
            let model = load(file)?.model(graded)?;
            let b = crate::cohomology::betti(&model)?;
            r.line(format!("betti: {}", join(&b)));
            r.output("betti", b);
        }
        Command::Cohomology {
            file,
            degree,
            by_weight,
        } => {
            r.input("file", file.display().to_string()).input("degree", degree);
            let model = load(file)?.model(graded)?;
            if *by_weight {
                r.input("by_weight", true);
                let split = betti_by_weight(&model, *degree)?;
                for (w, b) in &split {
                    r.line(format!("H^{degree} weight {w}: {b}"));
                }
                let map: serde_json::Map<String, serde_json::Value> =
                    split.iter().map(|(w, b)| (w.to_string(), json!(b))).collect();
                r.output("by_weight", map);
            }
            let ring = CohomologyRing::up_to(&model, *degree)?;
            let reps: Vec<String> = ring
                .representatives(*degree)?
                .iter()
                .map(|f| show(&model, f))
                .collect();
            r.line(format!("b_{degree} = {}", reps.len()));
            for f in &reps {
                r.line(format!("  [{f}]"));
            }
            r.output("betti", reps.len()).output("representatives", reps);
        }
        Command::Generators { file, degree } => {
            r.input("file", file.display().to_string()).input("degree", degree);
            let model = load(file)?.model(graded)?;
            let ring = CohomologyRing::up_to(&model, *degree)?;
            let ind = ring.indecomposables(*degree)?;
            let reps = ind
                .representatives
                .iter()
                .map(|c| ring.form_of(c).map(|f| show(&model, &f)))
                .collect::<Result<Vec<_>>>()?;
            r.line(format!(
                "degree {degree}: {} generators (b = {}, decomposable {})",
                ind.count,
                ring.betti_number(*degree),
                ind.decomposable_dim
            ));
            for f in &reps {
                r.line(format!("  [{f}]"));
            }
            r.output("count", ind.count)
                .output("betti", ring.betti_number(*degree))
                .output("decomposable_dim", ind.decomposable_dim)
                .output("representatives", reps);
        }
        Command::Fingerprint { file } => {
            r.input("file", file.display().to_string());
            let fp = fingerprint_model(&load(file)?.model(graded)?)?;
            fingerprint_lines(&mut r, &fp);
            r.output("fingerprint", &fp);
        }
        Command::Compare { a, b } => {
            r.input("a", a.display().to_string()).input("b", b.display().to_string());
            let fa = fingerprint_model(&load(a)?.model(graded)?)?;
            let fb = fingerprint_model(&load(b)?.model(graded)?)?;
            let diffs = fa.differences(&fb);
            r.output("a", &fa).output("b", &fb).output("equal", diffs.is_empty());
            if diffs.is_empty() {
                r.line("fingerprints agree (isomorphism not ruled out)");
            } else {
                for d in &diffs {
                    r.line(format!(
                        "differ in {}{}: {:?} vs {:?}",
                        d.field,
                        d.position.map_or(String::new(), |p| format!("[{p}]")),
                        d.left,
                        d.right
                    ));
                }
                r.refute(&diffs);
            }
        }
        Command::VerifyIso { src, dst, map } => {
            r.input("src", src.display().to_string())
                .input("dst", dst.display().to_string())
                .input("map", map.display().to_string());
            let (s, d) = (load(src)?.model(graded)?, load(dst)?.model(graded)?);
            let phi = with_file(
                map,
                parse::parse_generator_map(&read(map)?, &s.names(), &d.names()),
            )?;
            match verify_cdga_morphism(&s, &d, &phi)? {
                MorphismVerdict::Isomorphism => {
                    r.line("isomorphism verified");
                    r.output("verdict", "isomorphism");
                }
                MorphismVerdict::NotCommuting {
                    name, difference, ..
                } => {
                    let diff = show(&d, &difference);
                    r.line(format!("fails on {name}: d(f({name})) - f(d({name})) = {diff}"));
                    r.output("verdict", "not_commuting");
                    r.refute(json!({"generator": name, "difference": diff}));
                }
                MorphismVerdict::Singular { rank } => {
                    r.line(format!("commutes with d but is singular (rank {rank})"));
                    r.output("verdict", "singular");
                    r.refute(json!({"rank": rank}));
                }
            }
        }
        Command::VerifyRingIso { src, dst, map } => {
            r.input("src", src.display().to_string())
                .input("dst", dst.display().to_string())
                .input("map", map.display().to_string());
            let (s, d) = (load(src)?.model(graded)?, load(dst)?.model(graded)?);
            let pairs = with_file(map, parse::parse_ring_map(&read(map)?, &s.names(), &d.names()))?;
            let (rs, rd) = (CohomologyRing::new(&s)?, CohomologyRing::new(&d)?);
            let verdict = verify_cohomology_ring_iso(&rs, &rd, &pairs)?;
            ring_verdict(&mut r, &verdict, &s, &d);
        }
        Command::Normalize { src } => {
            r.input("src", src.display().to_string());
            let model = load(src)?.model(graded)?;
            let out = normalize_perturbation(&model)?;
            let images: serde_json::Map<String, serde_json::Value> = model
                .generators()
                .iter()
                .map(|g| (g.name.clone(), json!(show(&out.model, out.map.image(g.index)))))
                .collect();
            for g in model.generators() {
                let img = out.map.image(g.index);
                if img != &Form::generator(model.dim(), g.index) {
                    r.line(format!("map {} = {}", g.name, show(&out.model, img)));
                }
            }
            let residual = out.residual.as_ref().map(|t| t.to_string());
            if let Some(t) = &residual {
                r.line(format!("residual t = {t}"));
            }
            let text = emit_model(&out.model)?;
            r.line(text.trim_end());
            r.output("map", images)
                .output("residual", residual)
                .output("model", text);
        }
        Command::Decomposable { form } => {
            r.input("form", form);
            let path = Path::new(form);
            let forms: Vec<(Vec<String>, Form, String)> = if path.is_file() {
                let loaded = load(path)?;
                let names = loaded.file.names();
                let fs = loaded.file.forms()?;
                if fs.is_empty() {
                    return Err(Error::Invalid(format!("{form}: no form lines")));
                }
                fs.into_iter()
                    .zip(loaded.file.forms.iter().map(|f| f.text.clone()))
                    .map(|(f, t)| (names.clone(), f, t))
                    .collect()
            } else {
                let (names, f) = parse::parse_form_inline(form)?;
                vec![(names, f, form.clone())]
            };
            let mut results = Vec::new();
            let mut refuted = Vec::new();
            for (names, w, text) in &forms {
                let verdict = is_decomposable_2form(w)?;
                match &verdict {
                    Decomposability::Decomposable { u, v } => {
                        let (u, v) = (u.display_with(names), v.display_with(names));
                        r.line(format!("{text}: decomposable = ({u}) ^ ({v})"));
                        results.push(json!({"form": text, "decomposable": true, "u": u, "v": v}));
                    }
                    Decomposability::Indecomposable { square, rank } => {
                        let sq = square.display_with(names);
                        r.line(format!(
                            "{text}: not decomposable; rank {rank}, w^w = {sq}"
                        ));
                        let entry = json!({"form": text, "decomposable": false, "rank": rank, "square": sq});
                        refuted.push(entry.clone());
                        results.push(entry);
                    }
                }
            }
            r.output("results", &results);
            if !refuted.is_empty() {
                r.refute(refuted);
            }
        }
        Command::Family {
            name,
            k,
            gens,
            class,
            subspace,
            variant,
        } => {
            family(&mut r, *name, *k, *gens, *class, subspace.as_deref(), variant.as_deref(), graded)?;
        }
    }
    Ok(r)
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn fingerprint_lines(r: &mut Report, fp: &crate::morphisms::Fingerprint) {
    r.line(format!("dimension: {}", fp.dimension));
    r.line(format!("lcs quotients: {}", join(&fp.lcs_quotient_dims)));
    r.line(format!("betti: {}", join(&fp.betti)));
    r.line(format!("generators: {}", join(&fp.indecomposables)));
}

fn check(r: &mut Report, loaded: &Loaded, graded: bool) -> Result<()> {
    let lie = loaded.lie(graded)?;
    let jacobi: Vec<String> = lie
        .jacobi_defect()
        .iter()
        .map(|d| {
            let n = lie.names();
            let (i, j, k) = d.triple;
            format!("({},{},{})", n[i], n[j], n[k])
        })
        .collect();
    let zero_weights = vec![0; lie.dim()];
    let d2 = ce_model_with_weights(&lie, &zero_weights)?.check_d_squared();
    let chain = lower_central_series(&lie);
    r.output("jacobi_defects", &jacobi)
        .output("d_squared_defects", d2.len())
        .output("nilpotent", chain.terminates);
    r.line(format!("jacobi: {}", if jacobi.is_empty() { "ok".into() } else { format!("fails on {}", jacobi.join(" ")) }));
    r.line(format!("d^2 = 0: {}", if d2.is_empty() { "ok".into() } else { format!("fails on {} generators", d2.len()) }));
    r.line(format!("nilpotent: {}", if chain.terminates { "yes" } else { "no" }));
    let mut failures = Vec::new();
    if !jacobi.is_empty() || !d2.is_empty() {
        failures.push("jacobi");
    } else if !chain.terminates {
        failures.push("nilpotent");
    } else {
        let model = match &loaded.algebra {
            Algebra::Model(_) => loaded.model(graded)?,
            Algebra::Lie(_) => ce_model(&lie, &adapted_basis(&lie)?)?,
        };
        let triangular = model.is_triangular();
        r.output("triangular", triangular)
            .output("carnot_homogeneous", crate::lie::is_carnot_homogeneous(&model));
        r.line(format!("triangular: {}", if triangular { "yes" } else { "no" }));
        if !triangular {
            failures.push("triangular");
        }
    }
    if !failures.is_empty() {
        r.refute(json!({"failed": failures, "jacobi_defects": jacobi}));
    }
    Ok(())
}

fn ring_verdict(r: &mut Report, verdict: &RingVerdict, s: &SullivanModel, d: &SullivanModel) {
    match verdict {
        RingVerdict::Isomorphism => {
            r.line("cohomology ring isomorphism verified");
            r.output("verdict", "isomorphism");
            return;
        }
        RingVerdict::NotClosed {
            generator,
            side,
            differential,
        } => {
            let model = if *side == crate::morphisms::Side::Source { s } else { d };
            r.line(format!(
                "generator {generator} is not closed on the {side:?} side: d = {}",
                show(model, differential)
            ));
        }
        other => {
            r.line(format!("not an isomorphism: {other:?}"));
        }
    }
    r.output("verdict", "refuted");
    r.refute(verdict_json(verdict, s, d));
}

fn verdict_json(v: &RingVerdict, s: &SullivanModel, d: &SullivanModel) -> serde_json::Value {
    match v {
        RingVerdict::NotClosed {
            generator,
            side,
            differential,
        } => {
            let model = if *side == crate::morphisms::Side::Source { s } else { d };
            json!({"verdict": "not_closed", "generator": generator, "side": side, "differential": show(model, differential)})
        }
        other => serde_json::to_value(other).expect("serializable"),
    }
}

#[allow(clippy::too_many_arguments)]
fn family(
    r: &mut Report,
    name: FamilyName,
    k: Option<usize>,
    gens: Option<usize>,
    class: Option<usize>,
    subspace: Option<&Path>,
    variant: Option<&str>,
    graded: bool,
) -> Result<()> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Error::Invalid(format!("this family needs --{flag}")))
    };
    let finish = |m: SullivanModel| -> Result<String> {
        emit_model(&if graded { associated_graded_model(&m)? } else { m })
    };
    let text = match name {
        FamilyName::Theorem1 => {
            let k = need(k, "k")?;
            r.input("k", k);
            finish(families::theorem1_family(k)?)?
        }
        FamilyName::Theorem2 => {
            let k = need(k, "k")?;
            r.input("k", k);
            finish(families::theorem2_family(k)?)?
        }
        FamilyName::Theorem4 => finish(families::theorem4_example())?,
        FamilyName::Section3 => {
            let (first, second) = families::section3_pair();
            let v = variant.unwrap_or("first");
            r.input("variant", v);
            match v {
                "first" => finish(first)?,
                "second" => finish(second)?,
                "map" => {
                    let names = first.names();
                    families::section3_ring_map()
                        .iter()
                        .map(|(a, b)| format!("class {} -> {}\n", a.display_with(&names), b.display_with(&names)))
                        .collect()
                }
                other => return Err(Error::Invalid(format!("unknown variant {other:?}; use first, second or map"))),
            }
        }
        FamilyName::Free => {
            let (l, c) = (need(gens, "gens")?, need(class, "class")?);
            r.input("gens", l).input("class", c);
            let f = free_nilpotent_lie(l, c)?;
            finish(ce_model_with_weights(&f.lie, &f.weights)?)?
        }
        FamilyName::Theorem3 => {
            let (l, k) = (need(gens, "gens")?, need(k, "k")?);
            r.input("gens", l).input("k", k);
            let free = free_nilpotent_lie(l, k + 2)?;
            let top: Vec<String> = free.names()[free.component(k + 2)].to_vec();
            let vectors = match subspace {
                Some(p) => {
                    r.input("subspace", p.display().to_string());
                    with_file(p, parse::parse_subspace(&read(p)?, &top))?
                }
                None => Vec::new(),
            };
            let lie = theorem3_family(l, k, &vectors)?;
            let weights = adapted_basis(&lie)?.weights;
            finish(ce_model_with_weights(&lie, &weights)?)?
        }
    };
    r.input("name", format!("{name:?}").to_lowercase());
    r.output("file", &text);
    r.line(text.trim_end());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("nilrigid").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["betti"]).code, 2);
        assert_eq!(run_args(&["nonsense"]).code, 2);
        assert_eq!(run_args(&["betti", "/nonexistent/file"]).code, 2);
    }

    #[test]
    fn inline_decomposable() {
        let out = run_args(&["decomposable", "a1^c + a2^b"]);
        assert_eq!(out.code, 1, "{out:?}");
        assert!(out.stdout.contains("not decomposable"));
        let out = run_args(&["decomposable", "x1^x2 + x1^x3"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("(x1) ^ (x2 + x3)"), "{}", out.stdout);
    }

    #[test]
    fn family_output_parses() {
        let out = run_args(&["family", "theorem1", "--k", "1"]);
        assert_eq!(out.code, 0);
        assert!(matches!(parse_algebra(&out.stdout).unwrap(), Algebra::Model(_)));
        assert_eq!(run_args(&["family", "theorem2"]).code, 2);
    }
}
