//! Subcommand bodies.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use mcgdensity_core::certify::{classify as classify_word, CertificateFile, ClassifierConfig};
use mcgdensity_core::density::{
    add_separating_pair, adjusted_exponent, build_multiplier_set, default_pair, density_run, enumerate_ball,
    find_exceptionals, is_exceptional, subgroup_pipeline, validate_condition_star, Ball, ConditionStar, CurvePair,
    DensityConfig, DensityReport, Generators, Membership, TwistPowers,
};
use mcgdensity_core::mapping_class::{SurfaceFixture, TwistAlphabet, Word};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::config::{Mode, RunConfig};
use crate::error::CliError;
use crate::exec::Pool;
use crate::report::{Report, REPORT_SCHEMA};

/// Certificates and exceptional flags re-checked after each run.
const SELF_CHECK_SAMPLE: usize = 8;

/// Prints to stdout; a closed pipe just ends the output.
fn print_text(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(value: &T) {
    print_text(&to_pretty(value));
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn alphabet(config: &RunConfig) -> Result<TwistAlphabet, CliError> {
    if config.alphabet == "humphries" {
        return Ok(TwistAlphabet::standard(config.genus)?);
    }
    let path = Path::new(&config.alphabet);
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let fixture: SurfaceFixture = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())))?;
    if fixture.genus != config.genus {
        return Err(CliError::Config(format!("field `genus`: {} but the fixture has genus {}", config.genus, fixture.genus)));
    }
    Ok(fixture.alphabet()?)
}

/// The chain twists `T_1 .. T_{2g+1}`.
fn chain_generators(config: &RunConfig) -> Generators {
    Generators::twists(2 * config.genus + 1)
}

fn density_config(config: &RunConfig) -> DensityConfig {
    DensityConfig { radius: config.radius, ball_cap: config.ball_cap, classifier: ClassifierConfig::from(&config.classifier) }
}

fn ball_of(pool: &Pool, a: &TwistAlphabet, gens: &Generators, config: &RunConfig) -> Result<Ball, CliError> {
    Ok(enumerate_ball(pool, a, gens, config.radius, config.ball_cap)?)
}

fn require_complete(ball: &Ball) -> Result<(), CliError> {
    if ball.complete {
        Ok(())
    } else {
        Err(CliError::ResourceCap(format!("ball cap hit; exact only up to radius {}", ball.exact_radius)))
    }
}

pub fn surface(config: &RunConfig) -> Result<(), CliError> {
    let a = alphabet(config)?;
    let t = a.surface();
    print_json(&json!({
        "genus": t.genus(),
        "vertices": 1,
        "edges": t.num_edges(),
        "triangles": t.triangles(),
        "euler_characteristic": t.euler_characteristic(),
        "vertex_link": t.link(),
    }));
    Ok(())
}

pub fn curves(config: &RunConfig) -> Result<(), CliError> {
    let a = alphabet(config)?;
    let rows: Vec<_> = a
        .curves()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "twist": format!("T{}", i + 1),
                "name": c.name,
                "weights": c.curve,
                "homology": c.homology_class(),
                "realization": c.realization(),
            })
        })
        .collect();
    print_json(&rows);
    Ok(())
}

pub fn classify(config: &RunConfig, word: &str, certificate: Option<&Path>) -> Result<(), CliError> {
    let a = alphabet(config)?;
    let w: Word = word.parse()?;
    let v = classify_word(&a, &w, &ClassifierConfig::from(&config.classifier))?;
    print_json(&json!({ "word": w, "class": v.class().name(), "verdict": v }));
    if let Some(path) = certificate {
        match CertificateFile::of_verdict(&a, &w, &v) {
            Some(file) => write_file(path, &to_pretty(&file))?,
            None => eprintln!("mcgdensity: verdict is not certified; no certificate written"),
        }
    }
    Ok(())
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

pub fn ball(config: &RunConfig) -> Result<(), CliError> {
    let (pool, a) = (Pool::from_env()?, alphabet(config)?);
    let b = ball_of(&pool, &a, &chain_generators(config), config)?;
    let elements: Vec<_> = b.elements.iter().map(|e| json!({ "word": e.word, "distance": e.distance() })).collect();
    print_json(&json!({
        "radius": b.radius,
        "complete": b.complete,
        "exact_radius": b.exact_radius,
        "sizes": (0..=b.exact_radius).map(|r| b.count_within(r)).collect::<Vec<_>>(),
        "elements": elements,
    }));
    require_complete(&b)
}

pub fn exceptionals(config: &RunConfig) -> Result<(), CliError> {
    let (pool, a) = (Pool::from_env()?, alphabet(config)?);
    let pair = default_pair(&a, config.pair_search)?;
    let b = ball_of(&pool, &a, &chain_generators(config), config)?;
    let found = find_exceptionals(&pool, &a, &b, &pair)?;
    print_json(&json!({
        "a": pair.a_name,
        "b": pair.b_name,
        "checked": b.len(),
        "exceptional": found.iter().map(|&i| &b.elements[i].word).collect::<Vec<_>>(),
    }));
    require_complete(&b)
}

fn whole_group_powers(config: &RunConfig, gens: &Generators, pair: &CurvePair) -> Result<TwistPowers, CliError> {
    let h = pair.b_from_a.clone().unwrap_or_default();
    Ok(TwistPowers::whole_group(gens, 0, &h, adjusted_exponent(config.k_a), adjusted_exponent(config.k_b))?)
}

pub fn multipliers(config: &RunConfig) -> Result<(), CliError> {
    let (pool, a) = (Pool::from_env()?, alphabet(config)?);
    let gens = chain_generators(config);
    let pair = default_pair(&a, config.pair_search)?;
    let b = ball_of(&pool, &a, &gens, config)?;
    let found = find_exceptionals(&pool, &a, &b, &pair)?;
    let f = build_multiplier_set(&a, &b, &found, &pair, &whole_group_powers(config, &gens, &pair)?)?;
    print_json(&f);
    require_complete(&b)
}

pub fn density(config: &RunConfig) -> Result<(), CliError> {
    let (pool, a) = (Pool::from_env()?, alphabet(config)?);
    let gens = chain_generators(config);
    let pair = default_pair(&a, config.pair_search)?;
    let powers = whole_group_powers(config, &gens, &pair)?;
    let run = density_run(&pool, &a, &gens, &pair, &powers, &density_config(config))?;
    finish(config, &a, None, run)
}

fn curve_index(a: &TwistAlphabet, name: &str, field: &str) -> Result<usize, CliError> {
    a.index_of(name).ok_or_else(|| CliError::Config(format!("field `{field}`: no curve named `{name}`")))
}

pub fn subgroup_density(config: &RunConfig) -> Result<(), CliError> {
    let pool = Pool::from_env()?;
    let mut a = alphabet(config)?;
    add_separating_pair(&mut a, config.pair_search)?;
    let s = &config.subgroup;
    let (ia, ib) = (curve_index(&a, &s.a, "subgroup.a")?, curve_index(&a, &s.b, "subgroup.b")?);
    let words = if s.generators.is_empty() {
        vec![Word::twist(ia, 1), Word::twist(ib, 1)]
    } else {
        s.generators
            .iter()
            .map(|w| w.parse::<Word>().map_err(|e| CliError::Config(format!("field `subgroup.generators`: {e}"))))
            .collect::<Result<_, _>>()?
    };
    let gens = Generators { words };
    let membership = match s.mode {
        Mode::TorelliKernel => Membership::Torelli,
        Mode::Words => Membership::Words,
    };
    let cs = validate_condition_star(&a, &gens, (ia, ib), (config.k_a, config.k_b), membership)?;
    eprintln!(
        "mcgdensity: hypothesis holds for {} and {}; exponents {}, {} adjusted to {}, {}",
        cs.a, cs.b, cs.k_a, cs.k_b, cs.adjusted_k_a, cs.adjusted_k_b
    );
    let run = subgroup_pipeline(&pool, &a, &gens, &cs, &density_config(config))?;
    finish(config, &a, Some(cs), run)
}

/// Writes certificates, report and CSV, then re-checks a seeded sample.
fn finish(config: &RunConfig, a: &TwistAlphabet, cs: Option<ConditionStar>, run: DensityReport) -> Result<(), CliError> {
    let mut written: Vec<PathBuf> = Vec::new();
    if let Some(dir) = &config.outputs.certificates_dir {
        let dir = Path::new(dir);
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        for (i, e) in run.elements.iter().enumerate() {
            if let Some(file) = CertificateFile::of_verdict(a, &e.word, &e.verdict) {
                let path = dir.join(format!("cert-{i:05}.json"));
                write_file(&path, &to_pretty(&file))?;
                written.push(path);
            }
        }
    }
    self_check(config, a, &run, &written)?;
    let report = Report {
        schema: REPORT_SCHEMA.to_string(),
        config: config.clone(),
        surface: SurfaceFixture::of(a),
        condition_star: cs,
        generators: run.generators,
        curve_pair: run.curve_pair,
        multiplier_set: run.multiplier_set,
        per_radius: run.per_radius,
        complete: run.complete,
        certificates_dir: config.outputs.certificates_dir.clone(),
    };
    match &config.outputs.report {
        Some(p) => write_file(Path::new(p), &report.to_json())?,
        None => print_text(&report.to_json()),
    }
    if let Some(p) = &config.outputs.csv {
        let mut buf = Vec::new();
        report.write_csv(&mut buf)?;
        write_file(Path::new(p), &String::from_utf8(buf).expect("csv is utf-8"))?;
    }
    if !report.complete {
        return Err(CliError::ResourceCap(format!("ball cap {} hit before radius {}", config.ball_cap, config.radius)));
    }
    Ok(())
}

fn self_check(config: &RunConfig, a: &TwistAlphabet, run: &DensityReport, certs: &[PathBuf]) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for path in certs.choose_multiple(&mut rng, SELF_CHECK_SAMPLE) {
        verify_file(path)?;
    }
    let indices: Vec<usize> = (0..run.elements.len()).collect();
    for &i in indices.choose_multiple(&mut rng, SELF_CHECK_SAMPLE) {
        let e = &run.elements[i];
        if is_exceptional(a, &e.word, &run.curve_pair)? != e.exceptional {
            return Err(CliError::Verify(format!("exceptional flag of `{}` does not recheck", e.word)));
        }
    }
    Ok(())
}

fn verify_file(path: &Path) -> Result<String, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let file: CertificateFile = serde_json::from_str(&text)
        .map_err(|e| CliError::Verify(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())))?;
    match file.verify() {
        Ok(true) => Ok(format!("{}: valid certificate for `{}`", path.display(), file.word)),
        Ok(false) => Err(CliError::Verify(format!("{}: evidence does not check out", path.display()))),
        Err(e) => Err(CliError::Verify(format!("{}: {e}", path.display()))),
    }
}

pub fn verify_certificate(path: &Path) -> Result<(), CliError> {
    print_text(&format!("{}\n", verify_file(path)?));
    Ok(())
}

pub fn emit_plot_data(report: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let text = fs::read_to_string(report).map_err(|e| CliError::io(report, e))?;
    let r = Report::from_json(&text)?;
    match out {
        Some(p) => {
            let mut buf = Vec::new();
            r.write_plot(&mut buf)?;
            write_file(p, &String::from_utf8(buf).expect("csv is utf-8"))
        }
        None => {
            let mut buf = Vec::new();
            r.write_plot(&mut buf)?;
            print_text(&String::from_utf8(buf).expect("csv is utf-8"));
            Ok(())
        }
    }
}
