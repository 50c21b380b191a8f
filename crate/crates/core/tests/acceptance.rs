//! Acceptance gates. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Run with
//!
//!     cargo test -p fermat-squares --test acceptance

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::One;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use serde_json::Value;

use fermat_squares::fermat_chain::system_for;
use fermat_squares::{
    chain_step, isqrt, pell_pair, run_quartic, Branch, Error, FermatSolution,
    GeneratorPair, Integer, QuadraticSystem,
};

type Check = Result<(), String>;

fn big(s: &str) -> Integer {
    s.parse().unwrap()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn eq<T: PartialEq + std::fmt::Display>(label: &str, got: T, want: T) -> Check {
    ensure(got == want, || format!("{label}: got {got}, want {want}"))
}

fn cli(args: &[&str]) -> Result<Vec<Value>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_fermat-squares"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).map_err(|e| format!("bad JSON line {l:?}: {e}")))
        .collect()
}

fn field<'a>(rec: &'a Value, key: &str) -> &'a str {
    rec["payload"][key].as_str().unwrap_or("<missing>")
}

fn pell_table() -> Check {
    let recs = cli(&["pell", "--count", "10"])?;
    eq("records", recs.len(), 10)?;
    for (i, rec) in recs.iter().enumerate() {
        let p = pell_pair(i as u64 + 1).map_err(|e| e.to_string())?;
        eq("u", field(rec, "u"), p.u.to_string().as_str())?;
        eq("v", field(rec, "v"), p.v.to_string().as_str())?;
    }
    for (k, u, v) in [(1, "1", "1"), (4, "17", "12"), (7, "239", "169")] {
        eq(&format!("u{k}"), field(&recs[k - 1], "u"), u)?;
        eq(&format!("v{k}"), field(&recs[k - 1], "v"), v)?;
    }
    Ok(())
}

fn family_tables() -> Check {
    let sum_square = [
        ["1", "1", "1", "0", "1", "1"],
        ["7", "5", "9", "40", "41", "49"],
        ["41", "29", "57", "1624", "1625", "1681"],
        ["239", "169", "337", "56784", "56785", "57121"],
        ["1393", "985", "1969", "1938480", "1938481", "1940449"],
    ];
    let hyp_square = [
        ["1", "1", "1", "0", "1"],
        ["7", "5", "7", "24", "25"],
        ["41", "29", "41", "840", "841"],
        ["239", "169", "239", "28560", "28561"],
        ["1393", "985", "1393", "970224", "970225"],
    ];
    let recs = cli(&["family", "--kind", "sum-square", "--count", "5"])?;
    eq("table 1 rows", recs.len(), 5)?;
    for (rec, row) in recs.iter().zip(&sum_square) {
        for (key, want) in ["u", "v", "x", "y", "z"].iter().zip(row) {
            eq(&format!("table 1 {key}"), field(rec, key), want)?;
        }
        eq("table 1 x+y", big(field(rec, "x")) + big(field(rec, "y")), big(row[5]))?;
    }
    let recs = cli(&["family", "--kind", "hyp-square", "--count", "5"])?;
    eq("table 2 rows", recs.len(), 5)?;
    for (rec, row) in recs.iter().zip(&hyp_square) {
        for (key, want) in ["u", "v", "x", "y", "z"].iter().zip(row) {
            eq(&format!("table 2 {key}"), field(rec, key), want)?;
        }
    }
    Ok(())
}

fn brute_oracle() -> Check {
    let recs = cli(&["brute", "--bound", "1000000"])?;
    let got: Vec<(&str, &str)> = recs.iter().map(|r| (field(r, "x"), field(r, "w"))).collect();
    ensure(got == [("0", "1"), ("119", "13")], || format!("got {got:?}"))
}

fn fermat_solution() -> Check {
    let recs = cli(&["chain", "--method", "fermat", "--steps", "1", "--branch", "t1"])?;
    let rec = recs.first().ok_or("no record")?;
    for (key, want) in [
        ("x", "4565486027761"),
        ("y", "1061652293520"),
        ("z", "4687298610289"),
        ("e", "2165017"),
        ("f", "2372159"),
    ] {
        eq(key, field(rec, key), want)?;
    }
    eq("classification", rec["meta"]["classification"].as_str().unwrap_or(""), "positive_primitive")
}

fn example_one_negative() -> Result<FermatSolution, String> {
    FermatSolution::new(big("2276953"), big("-473304"), big("2325625"), 1).map_err(|e| e.to_string())
}

fn example_one_t2() -> Check {
    let step = chain_step(&FermatSolution::seed(), Branch::T2).map_err(|e| e.to_string())?;
    let want = example_one_negative()?;
    let got = &step.solution;
    eq("x", got.x(), want.x())?;
    eq("y", got.y(), want.y())?;
    eq("z", got.z(), want.z())?;
    eq("e", got.e(), &big("1525"))?;
    eq("f", got.f(), &big("1343"))?;
    eq("classification", got.classification().as_str(), "negative_primitive")
}

fn example_two() -> Check {
    let seed = example_one_negative()?;
    let (_, sys) = system_for(&seed).map_err(|e| e.to_string())?;
    ensure(sys == QuadraticSystem::new(2722, 3034, 1343, 1525), || format!("system {sys:?}"))?;

    let t1 = chain_step(&seed, Branch::T1).map_err(|e| e.to_string())?;
    eq("t1 x+y", t1.solution.triple().sum(), big("5705771236038721").pow(2))?;
    eq("t1 z", t1.solution.z().clone(), big("7658246457672229").pow(2))?;

    // The printed roots belong to the triple before dividing out gcd(x, y) = 169;
    // the reduced triple has both roots smaller by a factor of 13.
    let t2 = chain_step(&seed, Branch::T2).map_err(|e| e.to_string())?;
    let (sum_root, z_root) = (big("127249536947"), big("551491888597"));
    eq("t2 raw x", &t2.raw.x, &big("-206813120469783031691591"))?;
    eq("t2 raw y", &t2.raw.y, &big("223005565123008949772400"))?;
    eq("t2 lambda", &t2.lambda, &Integer::from(169))?;
    eq("t2 raw x+y", t2.raw.sum(), sum_root.pow(2))?;
    eq("t2 raw z", t2.raw.z.clone(), z_root.pow(2))?;
    eq("t2 reduced f", t2.solution.f().clone(), &sum_root / 13)?;
    eq("t2 reduced e", t2.solution.e().clone(), &z_root / 13)?;
    eq("t2 classification", t2.solution.classification().as_str(), "negative_primitive")
}

fn cross_method() -> Check {
    let fermat = cli(&["chain", "--method", "fermat", "--steps", "2", "--branch", "t1"])?;
    let quartic = cli(&["chain", "--method", "quartic", "--steps", "2"])?;
    let (f2, q2) = (fermat.get(1).ok_or("no fermat step 2")?, quartic.get(1).ok_or("no quartic k=2")?);
    eq("lambda", field(f2, "lambda"), "2502724")?;
    for (key, want) in [
        ("x", "214038981475081188634947041892245670988588201"),
        ("y", "109945628264924023237017010068507003594693720"),
        ("z", "240625698472667313160415295005368384723483849"),
        ("e", "15512114571284835412957"),
        ("f", "17999572487701067948161"),
    ] {
        eq(&format!("fermat {key}"), field(f2, key), want)?;
        eq(&format!("quartic {key}"), field(q2, key), want)?;
    }
    Ok(())
}

fn quartic_k3() -> Check {
    let run = run_quartic(3).map_err(|e| e.to_string())?;
    let st = run.states().nth(2).ok_or("chain stopped before k = 3")?;
    eq("k", st.k, 3)?;
    ensure(&st.x * &st.x + &st.y * &st.y == &st.z * &st.z, || "x² + y² ≠ z²".into())?;
    let (e, z_exact) = isqrt(&st.z).map_err(|e| e.to_string())?;
    let (f, sum_exact) = isqrt(&(&st.x + &st.y)).map_err(|e| e.to_string())?;
    ensure(z_exact && sum_exact, || "z or x + y not a perfect square".into())?;
    eq("√z₃", e, big("29032470413228645503712143213832535500985227130245791625262982715784415755764157625"))?;
    eq("√(x₃+y₃)", f, big("34168080993535113552180464917346868292958739991398355562578195440360113112814117057"))
}

fn property_pell() -> Check {
    for k in 1..=64u64 {
        let p = pell_pair(k).map_err(|e| e.to_string())?;
        let want = if k % 2 == 0 { Integer::one() } else { -Integer::one() };
        eq(&format!("k = {k}"), p.norm(), want)?;
    }
    Ok(())
}

fn property_round_trip() -> Check {
    let mut checked = 0;
    for m in -50i64..=50 {
        for n in -50i64..=50 {
            let Ok(g) = GeneratorPair::signed(m.into(), n.into()) else { continue };
            let t = g.triple();
            ensure(t.is_pythagorean() && t.is_primitive(), || format!("{g:?} not primitive"))?;
            let back = t.generators().map_err(|e| format!("{g:?}: {e}"))?;
            ensure(back == g || back == g.negated(), || format!("{g:?} -> {back:?}"))?;
            checked += 1;
        }
    }
    ensure(checked > 0, || "no pairs".into())
}

fn property_branch_squares() -> Check {
    let strategy = (-30i64..=30, -30i64..=30, 1i64..60, 1i64..60).prop_filter_map("valid pair", |(m, n, c, d)| {
        GeneratorPair::signed(m.into(), n.into()).ok().map(|g| (g, c, d))
    });
    let mut runner = TestRunner::deterministic();
    let mut solved = 0;
    for _ in 0..100 {
        let (g, c, d) = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let sys = QuadraticSystem::new((&g.m + &g.n) * 2, &g.m * 2, c, d);
        for branch in [Branch::T1, Branch::T2] {
            match sys.solve(branch) {
                Ok(t) => {
                    sys.verify_root(&t, branch).map_err(|e| format!("{sys:?} {branch}: {e}"))?;
                    solved += 1;
                }
                Err(Error::DegenerateSystem { .. }) => {}
                Err(e) => return Err(format!("{sys:?} {branch}: {e}")),
            }
        }
    }
    ensure(solved >= 150, || format!("only {solved} of 200 roots were non-degenerate"))
}

fn property_quartic_identity() -> Check {
    let run = run_quartic(3).map_err(|e| e.to_string())?;
    ensure(run.is_complete(), || "quartic chain stopped early".into())?;
    for step in &run.steps {
        let lhs = step.coeffs.eval(&step.root.shift);
        ensure(lhs == step.root.completed_square(), || format!("identity fails at k = {}", step.state.k))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Duration); 12] = [
        ("1 pell table", pell_table, Duration::from_secs(1)),
        ("2 family tables", family_tables, Duration::from_secs(1)),
        ("3 brute force oracle", brute_oracle, Duration::from_secs(60)),
        ("4 fermat solution", fermat_solution, Duration::from_secs(1)),
        ("5 example 1 t2", example_one_t2, Duration::from_secs(1)),
        ("6 example 2 both branches", example_two, Duration::from_secs(5)),
        ("7 cross-method k = 2", cross_method, Duration::from_secs(10)),
        ("8 quartic k = 3", quartic_k3, Duration::from_secs(60)),
        ("9a pell identity", property_pell, Duration::from_secs(30)),
        ("9b generator round trip", property_round_trip, Duration::from_secs(30)),
        ("9c branch roots are squares", property_branch_squares, Duration::from_secs(30)),
        ("9d quartic identity", property_quartic_identity, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
        });
        match result {
            Ok(()) => println!("PASS {name} ({elapsed:.2?})"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
