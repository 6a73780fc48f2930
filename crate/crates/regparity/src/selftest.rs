//! The acceptance checks, one per criterion, shared by the `selftest`
//! command and the acceptance test.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use crate::arith::{is_prime, valuation};
use crate::group_core::presets;
use crate::isogeny_modules::{
    alpha_factorization, borel_det_formula, build_borel_f, build_dihedral_maps, dihedral_alpha2_det_formula, matches_printed_p3,
    regconst_agreement, Agreement,
};
use crate::linalg::{ratio, QMatrix, Rat};
use crate::local_curve::{
    base_change, equivalence_outcome, local_root_number, parse_curve_file, pot_good_sign, scenario_grid, CurveFile, Field, LocalCurveData,
    LocalError, ReductionType, ScenarioCase, Sign,
};
use crate::parity_engine::{borel_parity, false_tate_ladder, height_block_identity_check, tamagawa_quotient_class, Parity, TowerDescription};
use crate::regconst::{
    a5_relations, borel_normalized_gram_det, borel_relation, borel_rho, named_table, regulator_constant, regulator_constant_with,
    s3_relation, GroupData, NamedRelation, SquareClass,
};
use crate::repq::{fixed_subspace, random_inner_product, rng, DEFAULT_SEED};
use crate::Error;

/// Result of one acceptance criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub criterion: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CheckOutcome {
    /// `criterion <n> <PASS|FAIL> <title>: <detail>`.
    #[must_use]
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {} {}: {} [{:.2}s]",
            self.criterion,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

pub const TITLES: [&str; 10] = [
    "S3 regulator constants",
    "A5 table and relation lattice",
    "Borel regulator constants and Gram determinant",
    "Borel isogeny identities",
    "dihedral det alpha_2",
    "X1(11) Tamagawa quotient and height identity",
    "root-number classifier",
    "Tamagawa/root-number equivalence",
    "49A1 false Tate ladder",
    "property suites",
];

/// Runs one criterion (1 to 10).
#[must_use]
pub fn run_check(criterion: u8, seed: u64) -> CheckOutcome {
    let start = Instant::now();
    let result = match criterion {
        1 => check_s3(),
        2 => check_a5(),
        3 => check_borel_regconst(),
        4 => check_borel_isogeny(),
        5 => check_dihedral(),
        6 => check_x1_11(seed),
        7 => check_root_numbers(),
        8 => check_equivalence(),
        9 => check_ladder(),
        10 => check_properties(seed),
        _ => Err(Error::Input(format!("no criterion {criterion}"))),
    };
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok((passed, detail)) => (passed, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let limit = match criterion {
        1 => Some(Duration::from_secs(1)),
        2 => Some(Duration::from_secs(30)),
        _ => None,
    };
    if let Some(limit) = limit.filter(|l| elapsed >= *l) {
        passed = false;
        detail.push_str(&format!("; over the {}s limit", limit.as_secs()));
    }
    CheckOutcome { criterion, title: TITLES.get(usize::from(criterion).wrapping_sub(1)).copied().unwrap_or("unknown"), passed, detail, elapsed }
}

/// Runs criteria 1 to 10 in order.
#[must_use]
pub fn run_all(seed: u64) -> Vec<CheckOutcome> {
    (1..=10).map(|c| run_check(c, seed)).collect()
}

type Check = Result<(bool, String), Error>;

fn row(values: &[i64]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn check_s3() -> Check {
    let data = GroupData::new("S3", presets::symmetric(3)?, DEFAULT_SEED)?;
    let t = named_table(&data, &[s3_relation()])?;
    let values = t.row_values(0);
    Ok((values == [3, 3, 3], format!("{} : {}", t.relations[0].1, row(&values))))
}

fn check_a5() -> Check {
    const EXPECTED: [[i64; 4]; 5] = [[2, 1, 1, 2], [3, 1, 3, 3], [3, 1, 3, 3], [5, 5, 5, 1], [15, 5, 15, 3]];
    let data = GroupData::new("A5", presets::alternating(5)?, DEFAULT_SEED)?;
    let t = named_table(&data, &a5_relations())?;
    let order = ["1", "rho6", "rho4", "rho5"];
    let mut rows = Vec::new();
    for (name, _) in &t.relations {
        let r: Option<Vec<i64>> = order.iter().map(|c| t.get(name, c).and_then(|v| v.value().to_i64())).collect();
        rows.push(r.ok_or_else(|| Error::Input(format!("missing entry in {name}")))?);
    }
    let rank = data.relation_lattice()?.len();
    let ok = rows.iter().zip(EXPECTED).all(|(a, b)| a[..] == b[..]) && rank == 5;
    let shown: Vec<String> = rows.iter().map(|r| row(r)).collect();
    Ok((ok, format!("rows {} ; lattice rank {rank}", shown.join(" / "))))
}

fn check_borel_regconst() -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [3u64, 5, 7] {
        let data = GroupData::new(format!("Borel:{p}"), presets::borel(p)?, DEFAULT_SEED)?;
        let theta = borel_relation(p, data.top_label()).to_vector(&data)?;
        let rho = borel_rho(&data, p)?.name.clone();
        for r in &data.irreducibles.irreducibles {
            let c = regulator_constant(&data, &theta, &r.module)?;
            // Irreducibles other than 1 and rho factor through C_{p-1}.
            let expected = if r.name == rho || r.name == "1" { SquareClass::from_int(p as i64) } else { SquareClass::from_int(p as i64).pow(r.dim() as i64) };
            ok &= c == expected;
        }
        let gram = borel_normalized_gram_det(&data, p)?;
        let pi = BigInt::from(p);
        let expected = Rat::new(pi.pow((p - 2) as u32), BigInt::from(p - 1).pow((p - 1) as u32));
        ok &= gram == expected;
        parts.push(format!("p={p}: C(1)=C(rho)={p}, gram {gram}"));
    }
    Ok((ok, parts.join("; ")))
}

fn check_borel_isogeny() -> Check {
    let mut ok = true;
    let mut dets = Vec::new();
    for p in [3u64, 5, 7] {
        let d = build_borel_f(p)?.det().unwrap_or_default();
        ok &= num_traits::Signed::abs(&d) == borel_det_formula(p);
        let a = alpha_factorization(p)?;
        let (d3, d4) = a.dets();
        ok &= a.identity_holds()? && valuation(&d3, p) == 0 && valuation(&d4, p) == 0;
        dets.push(format!("|det f|({p})={}", num_traits::Signed::abs(&d)));
    }
    let printed = matches_printed_p3()?;
    ok &= printed;
    Ok((ok, format!("{}; printed p=3 matrices {}; alpha identity checked", dets.join(" "), if printed { "match" } else { "differ" })))
}

fn check_dihedral() -> Check {
    let mut ok = true;
    let mut dets = Vec::new();
    for n in 2..=9u64 {
        let d = build_dihedral_maps(n)?.alpha2.det().unwrap_or_default();
        ok &= d == dihedral_alpha2_det_formula(n);
        dets.push(d.to_string());
    }
    Ok((ok, format!("det alpha_2 for n=2..9: {}", dets.join(" "))))
}

/// Local data of `X1(11)`: minimal discriminant `-11`, split
/// multiplicative at 11, good elsewhere.
pub const X1_11: &str = "name = \"X1(11)\"\n\n[[place]]\nplace = \"inf\"\nkind = \"real\"\n\n[[place]]\nplace = \"11\"\nkind = \"finite\"\np = 11\ntype = \"split_mult\"\nord_delta = 1\n";

/// Local data of `49A1`: additive, potentially good, `ord Delta = 3` at 7.
pub const CURVE_49A1: &str = "name = \"49A1\"\n\n[[place]]\nplace = \"inf\"\nkind = \"real\"\n\n[[place]]\nplace = \"7\"\nkind = \"finite\"\np = 7\ntype = \"additive_pot_good\"\nord_delta = 3\n";

fn curve(text: &str) -> Result<CurveFile, Error> {
    Ok(parse_curve_file(text)?)
}

fn check_x1_11(seed: u64) -> Check {
    let c = curve(X1_11)?;
    let mut ok = true;
    let mut checked = 0;
    for m in 2..=60u64 {
        if (2..=4u64).any(|k| k.pow(3) == m) {
            continue;
        }
        let t = TowerDescription::borel_over_q(&c, 3, m)?;
        let q = tamagawa_quotient_class(&t, &[(Field::M, 1), (Field::L, 2)], &[(Field::F, 1), (Field::K, 2)])?;
        let expected = SquareClass::from_int(if m % 11 == 0 { 3 } else { 1 });
        let odd = borel_parity(&t)?.parity == Parity::Odd;
        ok &= q == expected && odd == (m % 11 == 0);
        checked += 1;
    }
    let mut r = rng(seed);
    let mut heights = 0;
    for _ in 0..100 {
        let n = r.random_range(1..=5usize);
        let h = QMatrix::from_fn(n, n, |_, _| ratio(r.random_range(-9..=9), r.random_range(1..=4)));
        ok &= height_block_identity_check(&h);
        heights += 1;
    }
    Ok((ok, format!("{checked} values of m in 2..60: class 3 and odd iff 11 | m; height identity on {heights} random H")))
}

const POT_GOOD_ORDS: [u32; 7] = [2, 3, 4, 6, 8, 9, 10];

fn check_root_numbers() -> Check {
    let mut table: BTreeMap<(u32, u64), BTreeSet<Sign>> = BTreeMap::new();
    let primes: Vec<u64> = (5..2000).filter(|&n| is_prime(n)).collect();
    for &l in &primes {
        let mut q = l;
        while q < 1_000_000 {
            for ord in POT_GOOD_ORDS {
                let d = LocalCurveData::finite("v", q, ReductionType::AdditivePotGood, ord);
                table.entry((ord, q % 24)).or_default().insert(local_root_number(&d)?);
            }
            q *= l;
        }
    }
    let mut ok = table.len() == POT_GOOD_ORDS.len() * 8 && table.values().all(|s| s.len() == 1);
    let mut steps = 0;
    for t in [5u32, 7, 11, 13] {
        for &q in primes.iter().take_while(|&&q| q < 100) {
            for (ty, ords) in [(ReductionType::AdditivePotGood, &POT_GOOD_ORDS[..]), (ReductionType::AdditivePotMult, &[7u32, 8, 9][..])] {
                for &ord in ords {
                    let d = LocalCurveData::finite("v", q, ty, ord);
                    ok &= local_root_number(&d)? == local_root_number(&base_change(&d, t, 1, Default::default())?)?;
                    steps += 1;
                }
            }
        }
    }
    let mut squares = 0;
    for &l in primes.iter().take_while(|&&l| l < 100) {
        for (ty, ords) in [(ReductionType::AdditivePotGood, &POT_GOOD_ORDS[..]), (ReductionType::AdditivePotMult, &[7u32, 8][..])] {
            for &ord in ords {
                ok &= local_root_number(&LocalCurveData::finite("v", l * l, ty, ord))? == Sign::Plus;
                squares += 1;
            }
        }
    }
    Ok((ok, format!("{} (ord, q mod 24) cells single-valued; {steps} totally ramified steps stable; {squares} square fields give +1", table.len())))
}

fn check_equivalence() -> Check {
    let mut ok = true;
    let mut total = 0;
    let mut skipped = 0;
    let mut parts = Vec::new();
    for p in [3u64, 5, 7] {
        let mut cases = BTreeSet::new();
        let mut n = 0;
        for s in scenario_grid(p) {
            match equivalence_outcome(&s) {
                Ok(o) => {
                    ok &= o.agrees();
                    cases.insert(o.case);
                    n += 1;
                }
                Err(LocalError::TamagawaUnknown { .. }) => skipped += 1,
                Err(e) => return Err(e.into()),
            }
        }
        // Wild additive ramification at p = 3 lies outside the hypotheses.
        let expected = if p == 3 { 4 } else { 5 };
        ok &= cases.len() == expected && n >= 200;
        total += n;
        parts.push(format!("p={p}: {n} scenarios, cases {}", cases.iter().map(|c: &ScenarioCase| c.name()).collect::<Vec<_>>().join(",")));
    }
    Ok((ok, format!("{total} agree ({skipped} skipped with c in {{1,3}}); {}", parts.join("; "))))
}

fn check_ladder() -> Check {
    let c = curve(CURVE_49A1)?;
    let mut ok = true;
    for m in [2u64, 3, 5, 10] {
        for layer in false_tate_ladder(&c, 3, m, 5)? {
            let n = layer.level;
            ok &= layer.w_l == Sign::Minus.pow(u64::from(n)) && layer.lower_bound_l == u64::from(n) && layer.lower_bound_f == 3u64.pow(n);
        }
    }
    let w7 = local_root_number(&LocalCurveData::finite("7", 7, ReductionType::AdditivePotGood, 3))?;
    ok &= w7 == Sign::Minus && pot_good_sign(3, 7) == Sign::Minus;
    Ok((ok, format!("w(E/L_n) = (-1)^n, bounds n and 3^n for n=0..5; w_7 = {}", w7.value())))
}

fn check_properties(seed: u64) -> Check {
    let mut ok = true;
    let mut r = rng(seed);
    let mut pairs = 0;
    let mut dims = 0;
    let groups = [
        ("S3", presets::symmetric(3)?),
        ("D10", presets::dihedral(5)?),
        ("A4", presets::alternating(4)?),
        ("Borel:3", presets::borel(3)?),
        ("Borel:5", presets::borel(5)?),
        ("A5", presets::alternating(5)?),
    ];
    for (name, g) in groups {
        let data = GroupData::new(name, g, seed)?;
        for theta in data.relation_lattice()? {
            for rho in &data.irreducibles.irreducibles {
                let base = regulator_constant(&data, &theta, &rho.module)?;
                for _ in 0..5 {
                    let b = random_inner_product(&data.group, &rho.module, &mut r)?;
                    ok &= regulator_constant_with(&data, &theta, &rho.module, &b)? == base;
                }
                pairs += 1;
                let mut total = 0i64;
                for (n, class) in theta.coeffs().iter().zip(&data.classes) {
                    if *n != 0 {
                        total += n * fixed_subspace(&data.group, &rho.module, &class.rep)?.cols() as i64;
                    }
                }
                ok &= total.is_zero();
                dims += 1;
            }
        }
    }
    let mut families = 0;
    for p in [3u64, 5, 7] {
        let f = build_borel_f(p)?;
        let data = GroupData::new(format!("Borel:{p}"), (**f.source().group()).clone(), seed)?;
        ok &= regconst_agreement(&f, p, &data, None)?.iter().all(Agreement::agrees);
        let maps = build_dihedral_maps(p)?;
        let data = GroupData::new(format!("D{}", 2 * p), (**maps.f.source().group()).clone(), seed)?;
        ok &= regconst_agreement(&maps.f, p, &data, None)?.iter().all(Agreement::agrees);
        if p == 3 {
            let s3 = NamedRelation::new("Theta", &[(2, data.top_label()), (1, "1"), (-2, "C2"), (-1, "C3")]);
            ok &= regconst_agreement(&maps.f, 3, &data, Some(&s3.to_vector(&data)?))?.iter().all(Agreement::agrees);
            families += 1;
        }
        families += 2;
    }
    Ok((ok, format!("{pairs} (relation, irreducible) pairs stable under 5 random products; {dims} dimension cancellations; {families} q_parity families agree")))
}
