//! Exit criteria. Each criterion prints one PASS/FAIL line; the test fails
//! if any criterion fails. Run with `--nocapture` to see the lines.

use homexp::arith::{nu, nu_factorial, OddPrime};
use homexp::bounds::replay::replay;
use homexp::bounds::{exponent_interval, su_upper_closed, su_upper_recursive, Engine, RuleContext};
use homexp::exceptional::default_table_primes;
use homexp::output::{render_exceptional_table, Format};
use homexp::spaces::{parse_space, BoundInterval, LieGroup, Space};

const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

fn p(n: u64) -> OddPrime {
    OddPrime::new(n).unwrap()
}

fn interval(expr: &str, prime: u64, strict: bool) -> Result<BoundInterval, String> {
    let s = parse_space(expr).map_err(|e| e.to_string())?;
    let ctx = RuleContext {
        p: p(prime),
        strict,
    };
    exponent_interval(&s, &ctx).map_err(|e| format!("{expr} at p={prime}: {e}"))
}

fn expect_bounds(expr: &str, prime: u64, want: (u64, u64)) -> Result<(), String> {
    let got = interval(expr, prime, false)?.bounds();
    if got == (want.0, Some(want.1)) {
        Ok(())
    } else {
        Err(format!(
            "{expr} at p={prime}: expected [{}, {}], got {got:?}",
            want.0, want.1
        ))
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// (group label, prime label, interval, factor, references)
type ExpectedRow = (
    &'static str,
    &'static str,
    (u64, u64),
    &'static str,
    &'static str,
);

/// The exceptional-group table, row by row.
const EXPECTED_TABLE: [ExpectedRow; 17] = [
    ("G2", "3", (6, 6), "B2(3,11)", "BDMi 1.3, Th1 2.2"),
    ("G2", "5", (6, 6), "B(3,11)", ""),
    ("G2", ">5", (5, 5), "S^11", ""),
    ("F4,E6", "3", (12, 12), "K3", "BDF4 1.6, Th1 1.2"),
    ("F4,E6", "5,7", (11, 12), "B(23-q,23)", ""),
    ("F4,E6", "11", (12, 12), "B(3,23)", ""),
    ("F4,E6", ">11", (11, 11), "S^23", ""),
    ("E7", "5", (18, 20), "B(3,11,19,27,35)", "factor of SU(18)"),
    ("E7", "7", (17, 19), "B(11,23,35)", "factor of SU(18)"),
    ("E7", "11,13", (17, 18), "B(35-q,35)", ""),
    ("E7", "17", (18, 18), "B(3,35)", ""),
    ("E7", ">17", (17, 17), "S^35", ""),
    ("E8", "5", (30, 31), "W", "Rep 1.1, Th2 1.2"),
    (
        "E8",
        "7",
        (29, 32),
        "B(23,35,47,59)",
        "BDMi 1.4, iterated fibration",
    ),
    ("E8", "11-23", (29, 30), "B(59-q,59)", ""),
    ("E8", "29", (30, 30), "B(3,59)", ""),
    ("E8", ">29", (29, 29), "S^59", ""),
];

fn criterion_1_table() -> Result<(), String> {
    let table = Engine::standard()
        .exceptional_table(&default_table_primes(), false)
        .map_err(|e| e.to_string())?;
    check(table.rows.len() == EXPECTED_TABLE.len(), || {
        format!("{} rows", table.rows.len())
    })?;
    for (row, (g, cond, (lo, hi), factor, refs)) in table.rows.iter().zip(EXPECTED_TABLE) {
        let got = (
            row.group_label(),
            row.condition.label(),
            row.interval.bounds(),
            row.factor_label(),
            row.references.join(", "),
        );
        let want = (
            g.to_string(),
            cond.to_string(),
            (lo, Some(hi)),
            factor.to_string(),
            refs.to_string(),
        );
        check(got == want, || format!("row {got:?} != {want:?}"))?;
    }
    let golden = include_str!("golden/exceptional_table.txt");
    let text = render_exceptional_table(&table, Format::Text);
    check(text == golden, || {
        format!("text table differs from golden file:\n{text}")
    })
}

fn criterion_2_point_intervals() -> Result<(), String> {
    for q in PRIMES {
        expect_bounds(&format!("SU({})", q + 1), q, (q + 1, q + 1))?;
        expect_bounds(&format!("SU({})", 2 * q), q, (2 * q, 2 * q))?;
    }
    Ok(())
}

fn criterion_3_small_rank() -> Result<(), String> {
    for q in PRIMES {
        for n in 2..=q {
            expect_bounds(&format!("SU({n})"), q, (n - 1, n - 1))?;
        }
    }
    Ok(())
}

fn criterion_4_towers() -> Result<(), String> {
    for strict in [false, true] {
        for (expr, want) in [("B(23,35,47)", 25), ("B(23,35,47,59)", 32)] {
            let iv = interval(expr, 7, strict)?;
            check(iv.upper() == Some(want), || {
                format!(
                    "{expr} strict={strict}: upper {:?}, expected {want}",
                    iv.upper()
                )
            })?;
            check(iv.upper_cert().extrapolated_count() == 0, || {
                format!("{expr} marked extrapolated")
            })?;
        }
    }
    Ok(())
}

fn criterion_5_two_cell() -> Result<(), String> {
    for q in [3, 5, 7, 11] {
        expect_bounds(&format!("B(3,{})", 2 * q + 1), q, (q + 1, q + 1))?;
    }
    let mut pairs = 0;
    for q in PRIMES {
        for n in 2..=5 {
            let bottom = 2 * n + 1;
            let gap = 2 * q - 2;
            expect_bounds(
                &format!("B({bottom},{})", bottom + gap),
                q,
                (n + q - 1, n + q),
            )?;
            pairs += 1;
        }
    }
    check(pairs == 20, || format!("{pairs} pairs"))
}

fn criterion_6_legendre() -> Result<(), String> {
    for q in [3, 5, 7, 11] {
        let prime = p(q);
        let mut running = 0u64;
        for m in 1..=5000u64 {
            running += u64::from(nu(prime, m).unwrap());
            let legendre = nu_factorial(prime, m);
            check(legendre == running, || {
                format!("p={q} m={m}: {legendre} != {running}")
            })?;
            check(legendre <= (m - 1) / (q - 1), || {
                format!("p={q} m={m}: {legendre} > ⌊(m-1)/(p-1)⌋")
            })?;
        }
    }
    Ok(())
}

fn criterion_7_recursion() -> Result<(), String> {
    for q in PRIMES {
        for n in 2..q * q + q {
            let (r, c) = (su_upper_recursive(p(q), n), su_upper_closed(p(q), n));
            check(r == c, || {
                format!("p={q} n={n}: recursive {r} != closed {c}")
            })?;
        }
    }
    for q in [3, 5, 7] {
        for n in 2..=500 {
            let (r, c) = (su_upper_recursive(p(q), n), su_upper_closed(p(q), n));
            check(r <= c, || {
                format!("p={q} n={n}: recursive {r} > closed {c}")
            })?;
        }
    }
    // Hand-unrolled at p = 3, classes {2,4,…,12} and {3,5,…,11}:
    // f(2)=1 f(4)=1+max(1,3)=4 f(6)=1+max(4,5)=6 f(8)=2+max(6,7)=9
    // f(10)=4+max(9,9)=13 f(12)=4+max(13,11)=17;
    // f(3)=2 f(5)=1+max(2,4)=5 f(7)=2+max(5,6)=8 f(9)=2+max(8,8)=10 f(11)=4+max(10,10)=14
    let hand = 17u64;
    let got = su_upper_recursive(p(3), 12);
    check(got == hand, || format!("su_upper_recursive(3,12) = {got}"))
}

fn grid_spaces(q: u64) -> Vec<Space> {
    let mut out = Vec::new();
    for n in 1..=40 {
        out.push(Space::Group(LieGroup::SU(n)));
        out.push(Space::Group(LieGroup::Sp(n)));
        if n >= 3 {
            out.push(Space::Group(LieGroup::Spin(n)));
        }
    }
    let gap = 2 * q - 2;
    out.push(Space::bundle([3, 2 * q + 1]).unwrap());
    for n in 2..=5 {
        out.push(Space::bundle([2 * n + 1, 2 * n + 1 + gap]).unwrap());
    }
    if q == 7 {
        out.push(Space::bundle([23, 35, 47]).unwrap());
        out.push(Space::bundle([23, 35, 47, 59]).unwrap());
    }
    out
}

fn criterion_8_sanity() -> Result<(), String> {
    let engine = Engine::standard();
    for q in PRIMES {
        let ctx = RuleContext::new(p(q));
        for s in grid_spaces(q) {
            let iv = engine
                .exponent_interval(&s, &ctx)
                .map_err(|e| format!("{s} at p={q}: {e}"))?;
            let hi = iv
                .upper()
                .ok_or_else(|| format!("{s} at p={q}: no upper bound"))?;
            check(iv.lower() <= hi, || format!("{s} at p={q}: {iv}"))?;
            for cert in [iv.lower_cert(), iv.upper_cert()] {
                replay(cert, engine.facts()).map_err(|e| format!("{s} at p={q}: {e}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_9_harris() -> Result<(), String> {
    for q in [3, 5, 7] {
        for n in 1..=20 {
            let sp = interval(&format!("Sp({n})"), q, false)?.bounds();
            let odd = interval(&format!("Spin({})", 2 * n + 1), q, false)?.bounds();
            let even = interval(&format!("Spin({})", 2 * n + 2), q, false)?.bounds();
            check(sp == odd && odd == even, || {
                format!("n={n} p={q}: Sp {sp:?}, Spin(2n+1) {odd:?}, Spin(2n+2) {even:?}")
            })?;
        }
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    type Criterion = fn() -> Result<(), String>;
    let criteria: [(&str, Criterion); 9] = [
        (
            "1 exceptional table reproduction (golden, exact)",
            criterion_1_table,
        ),
        (
            "2 SU(p+1), SU(2p) point intervals",
            criterion_2_point_intervals,
        ),
        ("3 SU(n) = n-1 for n <= p", criterion_3_small_rank),
        (
            "4 B(23,35,47) <= 25, B(23,35,47,59) <= 32 at p=7, default and strict",
            criterion_4_towers,
        ),
        ("5 two-cell bundle intervals", criterion_5_two_cell),
        (
            "6 Legendre oracle and bound, m <= 5000",
            criterion_6_legendre,
        ),
        (
            "7 recursive vs closed SU upper bounds",
            criterion_7_recursion,
        ),
        (
            "8 interval sanity and certificate replay",
            criterion_8_sanity,
        ),
        ("9 Sp(n) = Spin(2n+1) = Spin(2n+2)", criterion_9_harris),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("[PASS] {name}"),
            Err(e) => {
                println!("[FAIL] {name}: {e}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
