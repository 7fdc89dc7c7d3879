//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command as Process;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qcousin::cech::les::{ses_les, triple_les};
use qcousin::cech::{complex_cohomology, CechComplex, RelativeComplex, Support};
use qcousin::cli::{engine_dims, oracle_spec, parse_manifest, run_command, Manifest};
use qcousin::cousin::{build_cousin, verify_cousin, Filtration};
use qcousin::modpres::{torsion_submodule, PresentedModule, TorsionMode};
use qcousin::oracle::words::word_product;
use qcousin::oracle::{oracle_dims, DimsQuery, Oracle};
use qcousin::report::Status;
use qcousin::scalar::{Field, FieldSpec};
use qcousin::sections::{verify_section_lemmas, LemmaParams, Semantics};
use qcousin::skewalg::{Algebra, Monomial};

struct Instance {
    name: String,
    manifest: Manifest,
    module: PresentedModule,
    problem: qcousin::cli::Problem,
}

fn manifest_paths() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/manifests");
    let mut v: Vec<PathBuf> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.retain(|p| p.extension().is_some_and(|x| x == "txt"));
    v.sort();
    v
}

fn battery() -> Vec<Instance> {
    manifest_paths()
        .into_iter()
        .map(|p| {
            let manifest = parse_manifest(&fs::read_to_string(&p).unwrap()).unwrap();
            let problem = manifest.resolve().unwrap();
            let module = problem.modules[manifest.module_name()].clone();
            Instance { name: p.file_stem().unwrap().to_string_lossy().into_owned(), manifest, module, problem }
        })
        .collect()
}

fn fields() -> [Field; 4] {
    [Field::rationals(), Field::generic(), Field::cyclotomic(3), Field::cyclotomic(4)]
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

type Outcome = Result<String, String>;

type Criterion<'a> = (u32, &'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn c1() -> Outcome {
    let mut checked = 0;
    for f in fields() {
        for n in 1..=3usize {
            let a = PresentedModule::free(Algebra::new(n, f.clone()), vec![0]);
            let dims = a.hilbert_function(0..=8);
            for (d, &v) in dims.iter().enumerate() {
                let want = binomial((n + d) as u64, n as u64) as usize;
                if v != want {
                    return Err(format!("n={n} d={d} q={}: {v} != {want}", f.spec()));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} dimensions equal C(n+d, n)"))
}

fn c2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..500 {
        let n = rng.gen_range(1..=3usize);
        let alg = Algebra::new(n, Field::generic());
        let mono =|rng: &mut ChaCha8Rng| {
            let mut e = vec![0u32; n + 1];
            for _ in 0..rng.gen_range(0..=6) {
                e[rng.gen_range(0..=n)] += 1;
            }
            e
        };
        let (a, b) = (mono(&mut rng), mono(&mut rng));
        let (c, m) = alg.monomial_product(&Monomial::new(a.clone()), &Monomial::new(b.clone()));
        let (e, w) = word_product(&a, &b);
        if m.exps() != w.as_slice() || c != alg.q_power(e) {
            return Err(format!("pair {k}: {a:?} * {b:?}, expected q^{e}"));
        }
    }
    Ok("500 random pairs match word rewriting, q-power included".into())
}

fn c3(battery: &[Instance]) -> Outcome {
    let mut count = 0;
    for inst in battery.iter().filter(|i| i.manifest.n <= 2) {
        let mut m = inst.manifest.clone();
        m.field = FieldSpec::Rationals;
        let problem = m.resolve().map_err(|e| e.to_string())?;
        let module = &problem.modules[m.module_name()];
        let spec = oracle_spec(&m, &problem).map_err(|e| e.to_string())?;
        let query = DimsQuery { d_max: 6, p_max: 3, filtration: m.filtration().entries().to_vec(), pole_bound: 8 };
        let ours = engine_dims(module, &query, TorsionMode::Certified);
        let theirs = oracle_dims(&spec, &query);
        if ours != theirs {
            return Err(format!("{}: engine {:?} vs oracle {:?}", inst.name, ours, theirs));
        }
        count += 1;
    }
    if count < 10 {
        return Err(format!("only {count} modules with n <= 2"));
    }
    Ok(format!("{count} modules: Hilbert, sections (both semantics), Cech and Cousin dimensions equal"))
}

fn monomials_of(m: &PresentedModule) -> Vec<Monomial> {
    let n = m.algebra().n();
    let nv = m.nvars();
    let mut out: Vec<Monomial> = (0..n).map(|z| Monomial::of_vars(nv, &((z + 1..=n).collect::<Vec<_>>()), 1)).collect();
    out.extend((0..nv).map(|i| Monomial::var(nv, i)));
    out.sort();
    out.dedup();
    out
}

fn c4(battery: &[Instance]) -> Outcome {
    let mut count = 0;
    for inst in battery {
        for u in monomials_of(&inst.module) {
            let c = torsion_submodule(&inst.module, &u, TorsionMode::Certified);
            let Some(p) = c.p_star else {
                return Err(format!("{}: no certificate for {u}", inst.name));
            };
            if !c.revalidated {
                return Err(format!("{}: certificate for {u} not revalidated", inst.name));
            }
            let w = torsion_submodule(&inst.module, &u, TorsionMode::Windowed { p_max: p + 2, window: 2 });
            if w.degree0 != c.degree0 {
                return Err(format!("{}: windowed and certified torsion differ for {u} (p* = {p})", inst.name));
            }
            count += 1;
        }
    }
    Ok(format!("{count} certified torsion computations agree with the windowed union"))
}

fn supports(n: usize) -> Vec<Support> {
    (0..=n).rev().map(Support::Stratum).chain(std::iter::once(Support::Empty)).collect()
}

fn c5(battery: &[Instance]) -> Outcome {
    let mut count = 0;
    for inst in battery {
        let n = inst.manifest.n;
        let p_max = 4;
        for z in 0..=n {
            let t = complex_cohomology(&inst.module, Support::Stratum(z), p_max, 2);
            if !t.structural_ok() {
                return Err(format!("{}: structural failure at z={z}", inst.name));
            }
            count += t.levels.len();
        }
        let s = supports(n);
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                for p in 1..=p_max {
                    let r = RelativeComplex::build(&inst.module, a, b, p);
                    let c = r.complex();
                    if !c.is_complex() || c.euler_characteristic() != c.cohomological_euler() {
                        return Err(format!("{}: relative ({a}, {b}) at p={p}", inst.name));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} complexes: d^2 = 0, transitions commute, Euler identity"))
}

fn c6() -> Outcome {
    for f in [Field::rationals(), Field::generic(), Field::cyclotomic(4)] {
        let a = PresentedModule::free(Algebra::new(1, f.clone()), vec![0]);
        for p in 1..=5 {
            let c = CechComplex::build(&a, Support::Stratum(0), p);
            let (h0, h1) = (c.complex().cohomology(0).dim(), c.complex().cohomology(1).dim());
            if (h0, h1) != (0, p as usize) {
                return Err(format!("q={} p={p}: H^0={h0}, H^1={h1}", f.spec()));
            }
        }
    }
    Ok("H^0 = 0 and H^1 = p for p <= 5 at three values of q".into())
}

fn c7() -> Outcome {
    let filt = Filtration::new(1, vec![1, 0]).unwrap();
    let spec = qcousin::oracle::CommutativeModuleSpec::from_text(FieldSpec::Rationals, 1, vec![0], &[]).unwrap();
    let oracle = Oracle::new(spec);
    for p in 1..=4u32 {
        let want = vec![1, p as usize + 1, p as usize];
        let o = oracle.cousin(&[1, 0], p);
        if o.dims != want || o.cohomology.iter().any(|&h| h != 0) {
            return Err(format!("oracle at p={p}: {:?}", o));
        }
        for f in [Field::rationals(), Field::generic(), Field::cyclotomic(4)] {
            let a = PresentedModule::free(Algebra::new(1, f.clone()), vec![0]);
            let c = build_cousin(&a, &filt, p);
            if c.dims() != want || !c.d_squared_zero() {
                return Err(format!("q={} p={p}: dims {:?}", f.spec(), c.dims()));
            }
            if f.spec() == FieldSpec::Rationals && c.cohomology() != o.cohomology {
                return Err(format!("p={p}: cohomology {:?}", c.cohomology()));
            }
        }
    }
    Ok("dims (1, p+1, p) for p <= 4, d_0 e = 0, exact at q=1 and matched by the oracle".into())
}

fn c8(battery: &[Instance]) -> Outcome {
    let mut count = 0;
    for inst in battery {
        let n = inst.manifest.n;
        let p_max = 3;
        let r = verify_cousin(&inst.module, &Filtration::full_flag(n), p_max, TorsionMode::Certified);
        for f in r.findings.iter().filter(|f| f.claim == "cousin part 1") {
            if f.status != Status::Pass {
                return Err(format!("{}: {} {:?}", inst.name, f.detail, f.witness));
            }
            count += 1;
        }
    }
    Ok(format!("{count} subspace equalities Ker e = supported sections"))
}

fn c9(battery: &[Instance]) -> Outcome {
    let mut count = 0;
    let params = LemmaParams { p_max: 3, t_max: 1, ..Default::default() };
    for inst in battery {
        let n = inst.manifest.n;
        for f in verify_section_lemmas(&inst.module, &params).iter().filter(|f| f.claim.starts_with("l2(")) {
            if f.status == Status::Fail {
                return Err(format!("{}: {} {}", inst.name, f.claim, f.detail));
            }
            count += 1;
        }
        let s = supports(n);
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                for k in j + 1..s.len() {
                    for p in 1..=3 {
                        let r = triple_les(&inst.module, (s[i], s[j], s[k]), p);
                        if !r.exact {
                            return Err(format!("{}: l7 {} at p={p}", inst.name, r.label));
                        }
                        count += 1;
                    }
                }
            }
        }
        for (name, ses) in &inst.problem.sequences {
            for i in 0..s.len() {
                for j in i + 1..s.len() {
                    for p in 1..=3 {
                        let r = ses_les(ses, (s[i], s[j]), p).map_err(|e| e.to_string())?;
                        if !r.exact {
                            return Err(format!("{}: l6 {name} {} at p={p}", inst.name, r.label));
                        }
                        count += 1;
                    }
                }
            }
        }
    }
    let a3 = Algebra::new(3, Field::generic());
    let m = PresentedModule::cyclic_monomial_quotient(a3, &[Monomial::new(vec![0, 0, 1, 0])]);
    let product = LemmaParams { p_max: 2, semantics: Semantics::Product, ..Default::default() };
    let found = verify_section_lemmas(&m, &product).into_iter().find(|f| {
        f.claim == "l2(1)" && f.status == Status::Fail && f.detail.contains("Gamma_(1) not contained in Gamma_(2)")
    });
    let Some(cx) = found else {
        return Err("product-semantics counterexample not detected".into());
    };
    let line = PresentedModule::free(Algebra::new(1, Field::generic()), vec![0]);
    let l13 = verify_section_lemmas(&line, &LemmaParams { p_max: 2, ..Default::default() })
        .into_iter()
        .find(|f| f.claim == "l1(3) surjective" && f.status == Status::Fail);
    let Some(l13) = l13 else {
        return Err("l1(3) surjectivity failure not detected".into());
    };
    Ok(format!(
        "{count} ideal-semantics checks hold; product counterexample witness {}; l1(3) witness {}",
        cx.witness.unwrap_or_default(),
        l13.witness.unwrap_or_default()
    ))
}

fn c10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_qcousin");
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut count = 0;
    for p in manifest_paths() {
        let a = Process::new(bin).arg("--manifest").arg(&p).output().map_err(|e| e.to_string())?;
        let b = Process::new(bin).arg("--manifest").arg(&p).output().map_err(|e| e.to_string())?;
        let want = fs::read(golden.join(format!("{}.json", p.file_stem().unwrap().to_string_lossy())))
            .map_err(|e| format!("{}: {e}", p.display()))?;
        if a.stdout != b.stdout || a.stdout != want {
            return Err(format!("{}: output differs between runs or from its golden", p.display()));
        }
        let m = parse_manifest(&fs::read_to_string(&p).unwrap()).unwrap();
        let code = run_command(&m).map_err(|e| e.to_string())?.exit_code();
        if a.status.code() != Some(code) {
            return Err(format!("{}: exit {:?}, report says {code}", p.display(), a.status.code()));
        }
        count += 1;
    }
    let dir = std::env::temp_dir().join(format!("qcousin-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let matrix = [
        ("[problem]\nfield = generic_q\nn = 1\ncommand = cousin\nfiltration = 1, 0\n", 0),
        ("[problem]\nfield = generic_q\nn = 1\ncommand = verify\nchecks = l1\n", 1),
        ("[problem]\nfield = generic_q\nn = 1\ncommand = oracle-compare\n", 2),
        ("[problem]\nfield = q=1\nn = 1\ncommand = hilbert\n[module M]\nrelation = 2 | x1\n", 2),
        ("[problem\n", 2),
    ];
    for (i, (text, code)) in matrix.iter().enumerate() {
        let p = dir.join(format!("{i}.txt"));
        fs::write(&p, text).unwrap();
        let out = Process::new(bin).arg("--manifest").arg(&p).output().map_err(|e| e.to_string())?;
        if out.status.code() != Some(*code) {
            return Err(format!("matrix case {i}: exit {:?}, expected {code}", out.status.code()));
        }
    }
    let _ = fs::remove_dir_all(&dir);
    Ok(format!("{count} battery manifests byte-identical to their goldens across two runs; 0/1/2 matrix honored"))
}

fn main() {
    let start = Instant::now();
    let battery = battery();
    let criteria: Vec<Criterion<'_>> = vec![
        (1, "PBW dimensions", Duration::from_secs(10), Box::new(c1)),
        (2, "skew product vs word rewriting", Duration::from_secs(10), Box::new(c2)),
        (3, "q=1 oracle equivalence", Duration::from_secs(120), Box::new(|| c3(&battery))),
        (4, "torsion certification", Duration::from_secs(60), Box::new(|| c4(&battery))),
        (5, "Cech structural invariants", Duration::from_secs(300), Box::new(|| c5(&battery))),
        (6, "known value H^1 = p on the line", Duration::from_secs(30), Box::new(c6)),
        (7, "Cousin instance on the line", Duration::from_secs(60), Box::new(c7)),
        (8, "Ker e equals supported sections", Duration::from_secs(300), Box::new(|| c8(&battery))),
        (9, "lemma batteries", Duration::from_secs(300), Box::new(|| c9(&battery))),
        (10, "CLI determinism and exit codes", Duration::from_secs(300), Box::new(c10)),
    ];
    let mut failed = 0;
    for (k, name, budget, run) in criteria {
        let t = Instant::now();
        let r = run();
        let dt = t.elapsed();
        let r = match r {
            Ok(msg) if dt > budget => Err(format!("{msg}; took {:.1}s, budget {}s", dt.as_secs_f64(), budget.as_secs())),
            other => other,
        };
        match r {
            Ok(msg) => println!("PASS {k:>2} {name}: {msg} ({:.2}s)", dt.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("FAIL {k:>2} {name}: {msg} ({:.2}s)", dt.as_secs_f64());
            }
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
