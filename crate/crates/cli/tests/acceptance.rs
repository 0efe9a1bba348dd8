//! Acceptance battery: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use convfan::exact::{hermite_basis_det, linear_solve, rank_of, rat, ratio, SolutionDescriptor};
use convfan::fans::{
    caratheodory_descent, caratheodory_reduce, is_linear_on, is_smooth_fan, linearity_fan, normal_fan, refines,
    smooth_refine,
};
use convfan::graded::{
    asymptotic_limit_check, closure_equal, newton_h, verify_proposition, Verdict, VerifyConfig,
};
use convfan::lp::{build_q, phi_alpha, simplex_solve, verify_duality, LpInstance, LpOutcome};
use convfan::polyhedra::{minimize_linear, LinearMin};
use convfan::{Cone, Fan, GradedSystem, HPolyhedron, MonomialIdeal, QMatrix, QVector, Rat, WeightValuation};
use convfan_cli::input::SystemFile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn load_system(name: &str) -> GradedSystem {
    let text = std::fs::read_to_string(data(name)).unwrap();
    SystemFile::parse(&text).unwrap().build().unwrap()
}

fn int_vec(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> QVector {
    QVector((0..n).map(|_| rat(rng.random_range(lo..=hi))).collect())
}

fn combine(gens: &[QVector], lam: &QVector, n: usize) -> QVector {
    gens.iter().zip(lam.iter()).fold(QVector::zeros(n), |acc, (g, l)| acc.axpy(l, g))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn zero() -> Rat {
    rat(0)
}

fn lp_duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut optimal, mut infeasible, mut unbounded, mut bad) = (0, 0, 0, 0);
    while optimal < 250 {
        let r = rng.random_range(1..=8);
        let n = rng.random_range(1..=5);
        let a = QMatrix::new((0..n).map(|_| int_vec(&mut rng, r, -9, 9)).collect(), r);
        let cost = int_vec(&mut rng, r, -9, 9);
        let b = if rng.random_bool(0.8) {
            a.mul_vec(&int_vec(&mut rng, r, 0, 3))
        } else {
            int_vec(&mut rng, n, -9, 9)
        };
        let inst = LpInstance::new(cost.clone(), a.clone(), b.clone());
        match simplex_solve(&inst) {
            LpOutcome::Optimal { value, primal, dual } => {
                optimal += 1;
                let ok = inst.primal_feasible(&primal)
                    && inst.dual_feasible(&dual)
                    && cost.dot(&primal) == value
                    && b.dot(&dual) == value;
                bad += usize::from(!ok);
            }
            LpOutcome::Infeasible { farkas } => {
                infeasible += 1;
                let ok = a.vec_mul(&farkas).iter().all(|x| *x <= zero()) && b.dot(&farkas) > zero();
                bad += usize::from(!ok);
            }
            LpOutcome::Unbounded { point, ray } => {
                unbounded += 1;
                let ok = inst.primal_feasible(&point)
                    && ray.is_nonnegative()
                    && a.mul_vec(&ray).is_zero()
                    && cost.dot(&ray) < zero();
                bad += usize::from(!ok);
            }
        }
    }
    let mut duality = 0;
    while duality < 250 {
        let r = rng.random_range(1..=8);
        let n = rng.random_range(1..=5);
        let gens: Vec<QVector> = (0..r).map(|_| int_vec(&mut rng, n, -9, 9)).collect();
        let alpha = int_vec(&mut rng, r, 0, 9);
        let v = combine(&gens, &int_vec(&mut rng, r, 0, 3), n);
        let d = verify_duality(&gens, &alpha, &v).unwrap();
        duality += 1;
        bad += usize::from(!(d.gap_zero && d.primal_value == d.dual_value));
    }
    outcome(
        bad == 0,
        format!(
            "{optimal} optimal / {infeasible} infeasible / {unbounded} unbounded LPs with checked certificates, \
             {duality} phi duality instances, {bad} mismatches"
        ),
    )
}

/// Vertices and extreme rays of a pointed `{x : A x ≤ b}` by basis enumeration.
fn brute_force_vrep(a: &[QVector], b: &[Rat], n: usize) -> (Vec<QVector>, Vec<QVector>) {
    let feasible = |x: &QVector| a.iter().zip(b).all(|(ai, bi)| ai.dot(x) <= *bi);
    let mut vertices = BTreeSet::new();
    for s in subsets(a.len(), n) {
        let rows: Vec<QVector> = s.iter().map(|&i| a[i].clone()).collect();
        if rank_of(&rows) < n {
            continue;
        }
        let rhs = QVector(s.iter().map(|&i| b[i].clone()).collect());
        if let SolutionDescriptor::Consistent { particular, .. } = linear_solve(&QMatrix::new(rows, n), &rhs) {
            if feasible(&particular) {
                vertices.insert(particular);
            }
        }
    }
    let mut rays = BTreeSet::new();
    for s in subsets(a.len(), n - 1) {
        let rows: Vec<QVector> = s.iter().map(|&i| a[i].clone()).collect();
        let kernel = QMatrix::new(rows, n).kernel();
        if kernel.len() != 1 {
            continue;
        }
        for d in [kernel[0].clone(), kernel[0].neg()] {
            if a.iter().all(|ai| ai.dot(&d) <= zero()) {
                rays.insert(d);
            }
        }
    }
    (vertices.into_iter().collect(), rays.into_iter().collect())
}

fn linear_minimization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut bounded, mut unbounded, mut bad) = (0, 0, 0);
    while bounded + unbounded < 150 {
        let n = rng.random_range(1..=4);
        let m = rng.random_range(n..=n + 4);
        let a: Vec<QVector> = (0..m).map(|_| int_vec(&mut rng, n, -5, 5)).collect();
        if rank_of(&a) < n {
            continue;
        }
        let x0 = int_vec(&mut rng, n, -3, 3);
        let b: Vec<Rat> = a.iter().map(|ai| ai.dot(&x0) + rat(rng.random_range(0..=3))).collect();
        let p = a
            .iter()
            .zip(&b)
            .fold(HPolyhedron::new(n), |p, (ai, bi)| p.leq(ai.clone(), bi.clone()));
        let u = int_vec(&mut rng, n, -5, 5);
        let (vertices, rays) = brute_force_vrep(&a, &b, n);
        let oracle_unbounded = rays.iter().any(|r| u.dot(r) < zero());
        let ok = match minimize_linear(&p, &u).unwrap() {
            LinearMin::Unbounded { ray } => {
                unbounded += 1;
                oracle_unbounded && u.dot(&ray) < zero() && a.iter().all(|ai| ai.dot(&ray) <= zero())
            }
            LinearMin::Min { value, argmin } => {
                bounded += 1;
                let oracle_min = vertices.iter().map(|v| u.dot(v)).min().unwrap();
                !oracle_unbounded
                    && value == oracle_min
                    && u.dot(&argmin) == value
                    && p.contains(&argmin)
                    && vertices.contains(&argmin)
            }
        };
        bad += usize::from(!ok);
    }
    outcome(
        bad == 0,
        format!("{bounded} bounded / {unbounded} unbounded random H-polyhedra (dim <= 4) against basis enumeration, {bad} mismatches"),
    )
}

fn generator_sets() -> Vec<Vec<QVector>> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let dims = [2, 2, 2, 2, 3, 3, 3, 3, 4, 4];
    dims.iter()
        .map(|&n| loop {
            let r = rng.random_range(n..=6.min(n + 3));
            let gens: BTreeSet<QVector> = (0..r)
                .map(|_| int_vec(&mut rng, n, 0, 3))
                .filter(|g| !g.is_zero())
                .map(|g| g.primitive_direction())
                .collect();
            let gens: Vec<QVector> = gens.into_iter().collect();
            if gens.len() >= n && rank_of(&gens) == n {
                break gens;
            }
        })
        .collect()
}

fn positive_costs(rng: &mut ChaCha8Rng, r: usize) -> QVector {
    QVector((0..r).map(|_| ratio(rng.random_range(1..=12), rng.random_range(1..=4))).collect())
}

fn linearity() -> Outcome {
    let sets = generator_sets();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut checks, mut bad) = (0, 0);
    for gens in &sets {
        let n = gens[0].dim();
        let fan = linearity_fan(n, gens).unwrap();
        for k in 0..50 {
            let alpha = positive_costs(&mut rng, gens.len());
            for c in fan.maximal_cones() {
                checks += 1;
                bad += usize::from(!is_linear_on(gens, &alpha, c, 2, k).unwrap());
            }
        }
    }
    let mut triples = 0;
    while triples < 500 {
        let gens = &sets[rng.random_range(0..sets.len())];
        let (n, r) = (gens[0].dim(), gens.len());
        let alpha = positive_costs(&mut rng, r);
        let v = combine(gens, &int_vec(&mut rng, r, 0, 4), n);
        let w = combine(gens, &int_vec(&mut rng, r, 0, 4), n);
        let t = ratio(rng.random_range(1..=9), rng.random_range(1..=5));
        let phi = |x: &QVector| phi_alpha(gens, &alpha, x).unwrap().value;
        let ok = phi(&v.scale(&t)) == &t * phi(&v) && phi(&v.add(&w)) <= phi(&v) + phi(&w);
        bad += usize::from(!ok);
        triples += 1;
    }
    let gens = vec![QVector::from_ints(&[1, 0]), QVector::from_ints(&[0, 1]), QVector::from_ints(&[1, 1])];
    let c = Cone::from_generators(2, &gens).unwrap();
    let control_fails = !is_linear_on(&gens, &QVector::from_ints(&[1, 1, 1]), &c, 4, 0).unwrap();
    outcome(
        bad == 0 && control_fails,
        format!(
            "{} generator sets x 50 alpha, {checks} cone checks, {triples} homogeneity/subadditivity triples, \
             {bad} failures; negative control on unrefined C {}",
            sets.len(),
            if control_fails { "fails as expected" } else { "unexpectedly linear" }
        ),
    )
}

fn normal_fans() -> Outcome {
    let sets = generator_sets();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut checked, mut bad) = (0, 0);
    for gens in &sets {
        let n = gens[0].dim();
        let support = Fan::from_cone(Cone::from_generators(n, gens).unwrap());
        let lf = linearity_fan(n, gens).unwrap();
        let directions: BTreeSet<QVector> = gens.iter().map(QVector::primitive_direction).collect();
        for _ in 0..10 {
            let alpha = positive_costs(&mut rng, gens.len());
            let nf = normal_fan(&build_q(gens, &alpha)).unwrap();
            let ok = nf.same_support(&support)
                && nf.rays().iter().all(|r| directions.contains(&r.primitive_direction()))
                && refines(&lf, &nf);
            checked += 1;
            bad += usize::from(!ok);
        }
    }
    outcome(
        bad == 0,
        format!("{checked} normal fans: support = cone(V), rays among the v_i, refined by the linearity fan; {bad} failures"),
    )
}

fn caratheodory() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut instances, mut reached, mut bad) = (0, 0, 0);
    while instances < 500 {
        let n = rng.random_range(1..=3);
        let r = rng.random_range(1..=6);
        let gens: Vec<QVector> = (0..r).map(|_| int_vec(&mut rng, n, -4, 4)).collect();
        if gens.iter().any(QVector::is_zero) {
            continue;
        }
        let lam = QVector((0..r).map(|_| ratio(rng.random_range(0..=6), rng.random_range(1..=3))).collect());
        let alpha = int_vec(&mut rng, r, 0, 9);
        let v = combine(&gens, &lam, n);
        let reduced = caratheodory_reduce(&gens, &alpha, &lam);
        let support: Vec<QVector> =
            (0..r).filter(|&i| reduced[i] != zero()).map(|i| gens[i].clone()).collect();
        let ok = reduced.is_nonnegative()
            && combine(&gens, &reduced, n) == v
            && alpha.dot(&reduced) <= alpha.dot(&lam)
            && rank_of(&support) == support.len();
        let phi = phi_alpha(&gens, &alpha, &v).unwrap().value;
        let descended = caratheodory_descent(&gens, &alpha, &lam);
        let value = alpha.dot(&descended);
        let ok = ok && combine(&gens, &descended, n) == v && descended.is_nonnegative() && value >= phi;
        reached += usize::from(value == phi);
        bad += usize::from(!ok);
        instances += 1;
    }
    let rate = reached as f64 / instances as f64;
    outcome(
        bad == 0 && rate >= 0.95,
        format!("{instances} instances, {bad} invariant failures, optimum reached in {:.1}%", 100.0 * rate),
    )
}

fn smooth_ok(input: &Fan) -> bool {
    let Ok(out) = smooth_refine(input) else {
        return false;
    };
    is_smooth_fan(&out)
        && refines(&out, input)
        && out.same_support(input)
        && out.maximal_cones().iter().all(|c| {
            hermite_basis_det(c.rays()).map(|l| l.lattice_det.to_string() == "1").unwrap_or(false)
                && c.rays().len() == c.dim()
        })
}

fn smooth_refinement() -> Outcome {
    let mut total = 0;
    let mut bad = 0;
    for a in 1..=7 {
        for b in 1..=7 {
            let gens = [QVector::from_ints(&[1, 0]), QVector::from_ints(&[a, b])];
            let fan = Fan::from_cone(Cone::from_generators(2, &gens).unwrap());
            total += 1;
            bad += usize::from(!smooth_ok(&fan));
        }
    }
    let cones3: [&[[i64; 3]]; 9] = [
        &[[1, 0, 0], [0, 1, 0], [1, 1, 2]],
        &[[1, 0, 0], [0, 1, 0], [1, 1, 3]],
        &[[1, 0, 0], [0, 1, 0], [1, 1, 4]],
        &[[1, 0, 0], [0, 1, 0], [1, 1, 5]],
        &[[1, 0, 0], [0, 1, 0], [1, 2, 5]],
        &[[1, 0, 0], [0, 1, 0], [2, 3, 5]],
        &[[1, 0, 0], [1, 2, 0], [0, 0, 1]],
        &[[1, 0, 0], [0, 1, 0], [1, 2, 3]],
        &[[1, 1, 0], [1, 0, 1], [0, 1, 1]],
    ];
    for rays in cones3 {
        let gens: Vec<QVector> = rays.iter().map(|r| QVector::from_ints(r)).collect();
        let cone = Cone::from_generators(3, &gens).unwrap();
        let mult: i64 = cone.multiplicity().to_string().parse().unwrap();
        total += 1;
        bad += usize::from(mult > 5 || !smooth_ok(&Fan::from_cone(cone)));
    }
    outcome(bad == 0, format!("{total} cones (49 planar, 9 in dimension 3 with multiplicity <= 5), {bad} failures"))
}

fn end_to_end() -> Outcome {
    let mut notes = Vec::new();
    let path = |n: &str| data(n).to_str().unwrap().to_owned();
    let run = |args: &[&str]| {
        let mut full = vec!["convfan"];
        full.extend_from_slice(args);
        convfan_cli::run(full, &mut std::io::empty())
    };

    let worked = load_system("worked.json");
    let report = verify_proposition(&worked, &VerifyConfig { p_bound: 4, ..VerifyConfig::default() }).unwrap();
    let worked_ok = report.verdict == Verdict::Verified
        && report.exponents.d == 1
        && report.cones.len() == report.fan.maximal_cones().len()
        && report.cones.iter().all(|c| c.passed());
    let cli = run(&["verify", &path("worked.json"), "--p-bound", "4"]);
    let worked_ok = worked_ok && cli.code == 0;
    notes.push(format!("worked system d = {}, exit {}", report.exponents.d, cli.code));

    let single = run(&["verify", &path("worked.json"), "--no-refine"]);
    let single_ok = single.code == 1 && single.stdout.contains("witness: ") && single.stdout.contains("separating weight");
    notes.push(format!("single cone exit {}", single.code));

    let half = load_system("half_vertex.json");
    let report = verify_proposition(&half, &VerifyConfig::default()).unwrap();
    let lcm = report.exponents.per_ray.iter().fold(1u64, |acc, e| num_lcm(acc, e.d));
    let half_ok = report.verdict == Verdict::Verified
        && report.exponents.d >= 2
        && report.exponents.d == lcm
        && run(&["verify", &path("half_vertex.json")]).code == 0;
    notes.push(format!("second system d = {} = lcm of per-ray values", report.exponents.d));

    outcome(worked_ok && single_ok && half_ok, notes.join("; "))
}

fn num_lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

fn lattice_points_in(sys: &GradedSystem, bound: i64) -> Vec<QVector> {
    let s = sys.grading_rank();
    let mut out = Vec::new();
    let mut cur = vec![-bound; s];
    loop {
        let m = QVector::from_ints(&cur);
        if !m.is_zero() && sys.cone().contains(&m) {
            out.push(m);
        }
        let mut i = 0;
        while i < s && cur[i] == bound {
            cur[i] = -bound;
            i += 1;
        }
        if i == s {
            return out;
        }
        cur[i] += 1;
    }
}

fn facet_weights(sys: &GradedSystem) -> Vec<QVector> {
    let n = sys.ambient_dim();
    let mut out: BTreeSet<QVector> = (0..n).map(|i| QVector::unit(n, i)).collect();
    for ideal in sys.ideals() {
        if ideal.is_zero() {
            continue;
        }
        for c in newton_h(ideal).unwrap().inequalities() {
            let w = c.normal.neg();
            if !w.is_zero() && w.is_nonnegative() {
                out.insert(w.primitive_direction());
            }
        }
    }
    out.into_iter().collect()
}

fn limit_certification() -> Outcome {
    let (mut pairs, mut bad) = (0, 0);
    for name in ["worked.json", "half_vertex.json"] {
        let sys = load_system(name);
        let weights = facet_weights(&sys);
        for m in lattice_points_in(&sys, 4) {
            for w in &weights {
                let check = asymptotic_limit_check(&sys, &WeightValuation::new(w.clone()).unwrap(), &m, 8).unwrap();
                pairs += 1;
                bad += usize::from(!check.consistent);
            }
        }
    }
    outcome(bad == 0, format!("{pairs} (w, m) pairs with |m| <= 4 and L = 8, {bad} inconsistent"))
}

/// Generalized cross product of `n - 1` integer vectors in `Z^n`.
fn cross(vs: &[Vec<i64>], n: usize) -> Vec<i64> {
    match n {
        1 => vec![1],
        2 => vec![-vs[0][1], vs[0][0]],
        3 => {
            let (a, b) = (&vs[0], &vs[1]);
            vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
        }
        _ => unreachable!(),
    }
}

/// Candidate inner facet normals for Newton polyhedra spanned by `points` and the unit directions.
fn candidate_weights(points: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut out = BTreeSet::new();
    for p0 in points {
        let mut dirs: Vec<Vec<i64>> = points.iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
        dirs.extend((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()));
        for s in subsets(dirs.len(), n - 1) {
            let chosen: Vec<Vec<i64>> = s.iter().map(|&i| dirs[i].clone()).collect();
            let mut w = cross(&chosen, n);
            if w.iter().all(|&x| x <= 0) {
                w.iter_mut().for_each(|x| *x = -*x);
            }
            if w.iter().any(|&x| x < 0) || w.iter().all(|&x| x == 0) {
                continue;
            }
            let g = w.iter().fold(0, |acc, &x| gcd_i64(acc, x));
            out.insert(w.iter().map(|x| x / g).collect::<Vec<_>>());
        }
    }
    out.into_iter().collect()
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd_i64(b, a % b) }
}

fn in_newton(u: &[i64], gens: &[Vec<i64>], weights: &[Vec<i64>]) -> bool {
    weights.iter().all(|w| {
        let dot = |x: &[i64]| x.iter().zip(w).map(|(a, b)| a * b).sum::<i64>();
        gens.iter().map(|g| dot(g)).min().unwrap() <= dot(u)
    })
}

fn closure_oracle(a: &[Vec<i64>], b: &[Vec<i64>], n: usize) -> bool {
    let mut points = a.to_vec();
    points.extend_from_slice(b);
    let weights = candidate_weights(&points, n);
    let mut u = vec![0i64; n];
    loop {
        if in_newton(&u, a, &weights) != in_newton(&u, b, &weights) {
            return false;
        }
        let mut i = 0;
        while i < n && u[i] == 30 {
            u[i] = 0;
            i += 1;
        }
        if i == n {
            return true;
        }
        u[i] += 1;
    }
}

fn closure_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut equal, mut different, mut bad) = (0, 0, 0);
    let point = |rng: &mut ChaCha8Rng, n: usize| -> Vec<i64> { (0..n).map(|_| rng.random_range(0..=6)).collect() };
    for _ in 0..240 {
        let n = rng.random_range(1..=3);
        let k = rng.random_range(1..=4);
        let a: Vec<Vec<i64>> = (0..k).map(|_| point(&mut rng, n)).collect();
        let mut b = a.clone();
        match rng.random_range(0..4) {
            0 => {
                let (p, q) = (&a[rng.random_range(0..k)], &a[rng.random_range(0..k)]);
                b.push(p.iter().zip(q).map(|(x, y)| (x + y + 1) / 2).collect());
            }
            1 => b.push(point(&mut rng, n)),
            2 => {
                let i = rng.random_range(0..k);
                b[i] = point(&mut rng, n);
            }
            _ => {
                let i = rng.random_range(0..k);
                let j = rng.random_range(0..n);
                b[i][j] += 1;
            }
        }
        let to_ideal = |g: &[Vec<i64>]| {
            MonomialIdeal::new(n, g.iter().map(|x| x.iter().map(|&e| e as u64).collect()).collect()).unwrap()
        };
        let ours = closure_equal(&to_ideal(&a), &to_ideal(&b));
        let oracle = closure_oracle(&a, &b, n);
        if oracle {
            equal += 1;
        } else {
            different += 1;
        }
        bad += usize::from(ours != oracle);
    }
    outcome(
        bad == 0,
        format!("{} pairs ({equal} equal closures, {different} different), {bad} disagreements", equal + different),
    )
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("LP duality suite", lp_duality, Duration::from_secs(30)),
        ("linear minimization over polyhedra", linear_minimization, Duration::from_secs(60)),
        ("piecewise linearity of phi", linearity, Duration::from_secs(120)),
        ("normal fan suite", normal_fans, Duration::from_secs(120)),
        ("Caratheodory suite", caratheodory, Duration::from_secs(60)),
        ("smooth refinement suite", smooth_refinement, Duration::from_secs(30)),
        ("end-to-end verification", end_to_end, Duration::from_secs(120)),
        ("asymptotic limit certification", limit_certification, Duration::from_secs(120)),
        ("closure oracle", closure_agreement, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        let pass = o.pass && took <= *budget;
        failed += usize::from(!pass);
        println!(
            "{} [{}] {name}: {} ({:.2}s, target {}s)",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            took.as_secs_f64(),
            budget.as_secs()
        );
    }
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
