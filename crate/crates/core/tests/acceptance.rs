//! One line per acceptance criterion; the test fails if any criterion is red.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::time::Instant;

use repwild::complexes::{enumerate_homotopy_strings, is_indecomposable_complex, is_isomorphic_complex, string_complex};
use repwild::mackey::{
    coh_mackey_cyclic, constant_mackey_rep, fixed_point_rep, infinite_family_c4, infinite_family_cpm,
};
use repwild::relhom::{cm_scan, ext_table, hom_table, sing_cat_cyclic, stable_hom_dim, KleinContext};
use repwild::repcat::{decompose, hom_basis, is_isomorphic};
use repwild::strings::{special_biserial_indecomposables, SbBounds};
use repwild::wildfam::{
    gamma_modules_exhaustive, gamma_modules_sample, sigma_modules, sigma_orbit_representatives, sigma_to_gamma,
    verify_strict_family,
};
use repwild::{Family, FpMatrix, PrimeField, Representation, SigmaModule, StrictFamilySpec};

const SEED: u64 = 0xC0FFEE;

type Outcome = Result<String, String>;
type Classes = HashMap<(usize, usize), Vec<(Vec<u32>, Representation)>>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// All matrices of the given shape over `f`.
fn all_matrices(f: PrimeField, rows: usize, cols: usize) -> Vec<FpMatrix> {
    let p = f.p();
    let n = rows * cols;
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|mut code| {
            let data = (0..n)
                .map(|_| {
                    let d = (code % p as usize) as u32;
                    code /= p as usize;
                    d
                })
                .collect();
            FpMatrix::from_vec(f, rows, cols, data)
        })
        .collect()
}

fn general_linear(f: PrimeField, n: usize) -> Vec<(FpMatrix, FpMatrix)> {
    all_matrices(f, n, n).into_iter().filter_map(|g| g.inverse().map(|gi| (g, gi))).collect()
}

fn pow_u(p: u64, e: u32) -> usize {
    (p as usize).pow(e)
}

fn c1_counts() -> Outcome {
    let mut got = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let alg = coh_mackey_cyclic(p, 1).map_err(err)?.algebra;
        let n = special_biserial_indecomposables(&alg, SbBounds::default()).map_err(err)?.len();
        check(n == 5 + 4 * (p as usize - 2), || format!("p={p}: {n} indecomposables"))?;
        got.push(format!("p={p}:{n}"));
    }
    Ok(got.join(" "))
}

fn c2_dictionary() -> Outcome {
    let alg = coh_mackey_cyclic(2, 1).map_err(err)?.algebra;
    let all = special_biserial_indecomposables(&alg, SbBounds::default()).map_err(err)?;
    let q = alg.quiver();
    let got: BTreeSet<(String, Vec<usize>)> =
        all.iter().map(|i| (i.label(q).replace('·', ""), i.module.dims().to_vec())).collect();
    // vertex 0 is the free orbit C_2/1, vertex 1 the fixed orbit C_2/C_2
    let want: BTreeSet<(String, Vec<usize>)> = [
        ("e0", vec![1, 0]),
        ("e1", vec![0, 1]),
        ("a", vec![1, 1]),
        ("b", vec![1, 1]),
        ("ab", vec![1, 2]),
    ]
    .into_iter()
    .map(|(s, d)| (s.to_string(), d))
    .collect();
    check(all.len() == 5 && got == want, || format!("got {got:?}"))?;
    Ok(got.iter().map(|(s, d)| format!("{s}{d:?}")).collect::<Vec<_>>().join(" "))
}

/// Orbit key of a representation of the two-vertex quiver under `GL(d0) × GL(d1)`.
fn orbit_key(rep: &Representation, gl: &HashMap<usize, Vec<(FpMatrix, FpMatrix)>>) -> Vec<u32> {
    let q = &rep.bound_quiver().quiver;
    let d = rep.dims();
    let mut best: Option<Vec<u32>> = None;
    for (g0, g0i) in &gl[&d[0]] {
        for (g1, g1i) in &gl[&d[1]] {
            let g = [(g0, g0i), (g1, g1i)];
            let mut key = Vec::new();
            for (arrow, m) in q.arrows().iter().zip(rep.maps()) {
                key.extend_from_slice(g[arrow.tgt].0.mul(m).mul(g[arrow.src].1).data());
            }
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    best.unwrap_or_default()
}

fn c3_oracle() -> Outcome {
    let f = PrimeField::new(2).map_err(err)?;
    let bq = coh_mackey_cyclic(2, 1).map_err(err)?.algebra.bound_quiver().clone();
    let gl: HashMap<usize, _> = (0..=2).map(|n| (n, general_linear(f, n))).collect();
    let mut by_dims: Vec<((usize, usize), Vec<Representation>)> = Vec::new();
    for d0 in 0..=2 {
        for d1 in 0..=2 {
            if d0 + d1 == 0 {
                continue;
            }
            let dims = vec![d0, d1];
            let mut reps = Vec::new();
            let shapes: Vec<(usize, usize)> = bq.quiver.arrows().iter().map(|a| (dims[a.tgt], dims[a.src])).collect();
            for m0 in all_matrices(f, shapes[0].0, shapes[0].1) {
                for m1 in all_matrices(f, shapes[1].0, shapes[1].1) {
                    let r = Representation::new(bq.clone(), dims.clone(), vec![m0.clone(), m1]).map_err(err)?;
                    if r.validate() {
                        reps.push(r);
                    }
                }
            }
            by_dims.push(((d0, d1), reps));
        }
    }
    by_dims.sort_by_key(|((a, b), _)| a + b);

    // one representative per orbit, per dimension vector
    let mut classes: Classes = HashMap::new();
    for (d, reps) in &by_dims {
        let mut seen = HashSet::new();
        let entry = classes.entry(*d).or_default();
        for r in reps {
            let k = orbit_key(r, &gl);
            if seen.insert(k.clone()) {
                entry.push((k, r.clone()));
            }
        }
    }
    // keys of decomposable orbits: direct sums of two nonzero smaller representations
    let mut sums: HashMap<(usize, usize), HashSet<Vec<u32>>> = HashMap::new();
    for (d, _) in &by_dims {
        for (e, xs) in &classes {
            let (r0, r1) = (d.0 as isize - e.0 as isize, d.1 as isize - e.1 as isize);
            if r0 < 0 || r1 < 0 || r0 + r1 == 0 {
                continue;
            }
            for (_, x) in xs {
                for (_, y) in &classes[&(r0 as usize, r1 as usize)] {
                    let s = Representation::direct_sum(&[x, y]).map_err(err)?;
                    sums.entry(*d).or_default().insert(orbit_key(&s, &gl));
                }
            }
        }
    }

    let mut instances = 0;
    let mut mismatches = Vec::new();
    let mut indecomposable_orbits = 0;
    for (d, reps) in &by_dims {
        let cls = &classes[d];
        let dec_keys = sums.get(d).cloned().unwrap_or_default();
        indecomposable_orbits += cls.iter().filter(|(k, _)| !dec_keys.contains(k)).count();
        for r in reps {
            instances += 1;
            let k = orbit_key(r, &gl);
            let oracle_indec = !dec_keys.contains(&k);
            if decompose(r).map_err(err)?.is_indecomposable() != oracle_indec {
                mismatches.push(format!("indecomposability at {d:?}"));
            }
            for (ck, c) in cls {
                if is_isomorphic(r, c).map_err(err)? != (ck == &k) {
                    mismatches.push(format!("isomorphism at {d:?}"));
                }
            }
        }
    }
    let orbits: usize = classes.values().map(Vec::len).sum();
    check(mismatches.is_empty(), || format!("{} mismatches, first: {}", mismatches.len(), mismatches[0]))?;
    check(indecomposable_orbits == 5, || format!("{indecomposable_orbits} indecomposable orbits"))?;
    Ok(format!("{instances} instances, {orbits} orbits, {indecomposable_orbits} indecomposable, 0 mismatches"))
}

/// Hom closed forms, columns S, M_a, M_b, M_ab, τS.
fn hom_closed_form(family: &str, n: usize) -> [usize; 5] {
    match family {
        "M((ab~)^n)" => [n + 1, n + 1, n + 1, n + 1, 3 * n + 1],
        "M((b~a)^n)" => [n, n + 1, n + 1, n + 1, 3 * n + 2],
        "M((ab~)^n a)" => [n + 1, n + 2, n + 1, n + 1, 3 * n + 3],
        "M((b~a)^n b~)" => [n + 1, n + 1, n + 2, n + 1, 3 * n + 3],
        "M(ab~, J_n(1))" => [n, n, n, n + 1, 3 * n],
        "M(ab~, A)" => [n, n, n, n, 3 * n],
        other => panic!("unknown family {other}"),
    }
}

fn ext_closed_form(family: &str, n: usize) -> usize {
    match family {
        "M((ab~)^n)" | "M((b~a)^n)" | "M(ab~, J_n(1))" => n - 1,
        _ => n,
    }
}

fn c4_hom_table(ctx: &KleinContext) -> Outcome {
    let rows = hom_table(ctx, 3).map_err(err)?;
    let mut cells = 0;
    for r in &rows {
        let want = hom_closed_form(&r.family, r.n);
        check(r.cells == want, || format!("{} n={} {}: {:?} ≠ {:?}", r.family, r.n, r.param, r.cells, want))?;
        cells += 5;
    }
    let string_cells = rows.iter().filter(|r| !r.family.contains(',')).count() * 5;
    check(string_cells == 60, || format!("{string_cells} string-row cells"))?;
    Ok(format!("{} rows, {cells} cells", rows.len()))
}

fn c5_ext_table(ctx: &KleinContext) -> Outcome {
    let rows = ext_table(ctx, 3).map_err(err)?;
    for r in &rows {
        let want = ext_closed_form(&r.family, r.n);
        check(r.method1 == want && r.method2 == want, || {
            format!("{} n={}: {} / {} ≠ {want}", r.family, r.n, r.method1, r.method2)
        })?;
    }
    Ok(format!("{} rows, both methods agree", rows.len()))
}

fn c6_cm_scan(ctx: &KleinContext) -> Outcome {
    let survivors = cm_scan(ctx, 6, 3).map_err(err)?;
    let targets = [ctx.string("ab~").map_err(err)?, ctx.string("b~a").map_err(err)?];
    check(survivors.len() == 2, || {
        format!("survivors: {:?}", survivors.iter().map(|s| s.label.as_str()).collect::<Vec<_>>())
    })?;
    for t in &targets {
        let hits = survivors
            .iter()
            .filter(|s| s.module.dims() == t.dims() && is_isomorphic(&s.module, t).unwrap_or(false))
            .count();
        check(hits == 1, || format!("target of dims {:?} matched {hits} survivors", t.dims()))?;
    }
    let [x, y] = &targets;
    let st = [
        stable_hom_dim(ctx, x, x).map_err(err)?,
        stable_hom_dim(ctx, y, y).map_err(err)?,
        stable_hom_dim(ctx, x, y).map_err(err)?,
        stable_hom_dim(ctx, y, x).map_err(err)?,
    ];
    check(st == [1, 1, 0, 0], || format!("stable Homs {st:?}"))?;
    Ok(format!(
        "survivors {}; stable End 1,1; cross 0,0",
        survivors.iter().map(|s| s.label.as_str()).collect::<Vec<_>>().join(", ")
    ))
}

/// The nine families of homotopy strings for μ^coh(C_2), up to `max` letters.
fn nine_families(max: usize) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = ["(e0)", "(e1)", "(a)", "(b)", "(b)(a)"].iter().map(|s| s.to_string()).collect();
    for t in 1..=max {
        let ab = "(ab)".repeat(t);
        for (extra, s) in [(0, ab.clone()), (1, format!("{ab}(a)")), (1, format!("(b){ab}")), (2, format!("(b){ab}(a)"))] {
            if t + extra <= max {
                out.insert(s);
            }
        }
    }
    out
}

fn c7_homotopy_strings() -> Outcome {
    let alg = std::sync::Arc::new(coh_mackey_cyclic(2, 1).map_err(err)?.algebra);
    let e = enumerate_homotopy_strings(&alg, 5).map_err(err)?;
    let got: BTreeSet<String> = e.strings.iter().map(|s| s.display(alg.quiver())).collect();
    let want = nine_families(5);
    check(got == want && got.len() == e.strings.len(), || {
        format!("extra {:?}, missing {:?}", got.difference(&want).collect::<Vec<_>>(), want.difference(&got).collect::<Vec<_>>())
    })?;
    check(e.bands.is_empty(), || format!("{} homotopy bands", e.bands.len()))?;
    let cxs = e.strings.iter().map(|s| string_complex(alg.clone(), s)).collect::<Result<Vec<_>, _>>().map_err(err)?;
    for (s, c) in e.strings.iter().zip(&cxs) {
        let name = s.display(alg.quiver());
        check(c.is_minimal(), || format!("{name} not minimal"))?;
        check(is_indecomposable_complex(c).map_err(err)?, || format!("{name} decomposes"))?;
    }
    for i in 0..cxs.len() {
        for j in i + 1..cxs.len() {
            check(!is_isomorphic_complex(&cxs[i], &cxs[j]).map_err(err)?, || {
                format!("{} ≅ {}", e.strings[i].display(alg.quiver()), e.strings[j].display(alg.quiver()))
            })?;
        }
    }
    Ok(format!("{} strings, 0 bands", cxs.len()))
}

/// `dim Hom_Σ(V, U)` by counting all intertwiners over F_2.
fn sigma_hom_brute(v: &SigmaModule, u: &SigmaModule) -> usize {
    let count = all_matrices(v.field, u.v, v.v)
        .into_iter()
        .filter(|t| t.mul(&v.x) == u.x.mul(t) && t.mul(&v.y) == u.y.mul(t))
        .count();
    count.trailing_zeros() as usize
}

fn c8_full_faithfulness() -> Outcome {
    let f = PrimeField::new(2).map_err(err)?;
    let mut modules = 0;
    let mut reps = Vec::new();
    for v in 1..=2 {
        let all = sigma_modules(f, v);
        modules += all.len();
        reps.extend(sigma_orbit_representatives(&all));
    }
    check(modules <= 256 + 4, || format!("{modules} modules"))?;
    let images: Vec<Representation> = reps.iter().map(|m| sigma_to_gamma(m).to_representation()).collect();
    let mut pairs = 0;
    for (i, v) in reps.iter().enumerate() {
        for (j, u) in reps.iter().enumerate() {
            let lhs = hom_basis(&images[i], &images[j]).map_err(err)?.dim();
            let rhs = sigma_hom_brute(v, u);
            check(lhs == rhs, || format!("pair ({i},{j}): Γ {lhs} vs Σ {rhs}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{modules} modules, {} classes, {pairs} pairs, 0 violations", reps.len()))
}

fn c9_strict_families() -> Outcome {
    let f2 = PrimeField::new(2).map_err(err)?;
    let f3 = PrimeField::new(3).map_err(err)?;
    let cases = [
        (Family::TruncPoly(2), f2),
        (Family::TruncPoly(3), f2),
        (Family::TruncPoly(2), f3),
        (Family::TruncPoly(3), f3),
        (Family::TwoVars(2), f2),
        (Family::MackeyC2, f2),
    ];
    let mut parts = Vec::new();
    for (family, f) in cases {
        let tag = format!("{family}/F{}", f.p());
        let spec = StrictFamilySpec::new(family, f).map_err(|e| format!("{tag}: {e}"))?;
        let exhaustive = gamma_modules_exhaustive(f, [1, 1, 1]);
        let sample = gamma_modules_sample(f, [2, 2, 1], 50, SEED);
        check(sample.len() == 50, || format!("{tag}: sample of {}", sample.len()))?;
        for (set, seed) in [(exhaustive, None), (sample, Some(SEED))] {
            let r = verify_strict_family(&spec, &set, seed).map_err(err)?;
            check(r.pass && r.failures.is_empty(), || format!("{tag}: {:?}", r.failures.first()))?;
        }
        parts.push(tag);
    }
    Ok(parts.join(" "))
}

fn c10_infinite_families() -> Outcome {
    let mut parts = Vec::new();
    for (name, build) in [
        ("c4", Box::new(infinite_family_c4) as Box<dyn Fn(usize) -> repwild::Result<Representation>>),
        ("cpm(3,2)", Box::new(|n| infinite_family_cpm(3, 2, n))),
    ] {
        let reps = (1..=5).map(&build).collect::<Result<Vec<_>, _>>().map_err(err)?;
        for (i, r) in reps.iter().enumerate() {
            check(r.validate(), || format!("{name} n={} violates relations", i + 1))?;
            check(decompose(r).map_err(err)?.is_indecomposable(), || format!("{name} n={} decomposes", i + 1))?;
        }
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                check(!is_isomorphic(&reps[i], &reps[j]).map_err(err)?, || format!("{name}: n={} ≅ n={}", i + 1, j + 1))?;
            }
        }
        parts.push(format!("{name} n≤5"));
    }
    Ok(parts.join(", "))
}

fn c11_singularity() -> Outcome {
    let mut parts = Vec::new();
    for (p, m) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
        let got = sing_cat_cyclic(p, m).map_err(err)?;
        let want: Vec<usize> = (1..=m).map(|j| pow_u(p, j) - pow_u(p, j - 1) - 1).collect();
        check(got == want, || format!("({p},{m}): {got:?} ≠ {want:?}"))?;
        parts.push(format!("({p},{m})→{got:?}"));
    }
    Ok(parts.join(" "))
}

fn norm(gamma: &FpMatrix, p: u64) -> FpMatrix {
    let f = gamma.field();
    let mut acc = FpMatrix::zeros(f, gamma.rows(), gamma.cols());
    let mut g = FpMatrix::identity(f, gamma.rows());
    for _ in 0..p {
        acc = acc.add(&g);
        g = g.mul(gamma);
    }
    acc
}

fn mackey_relations(rep: &Representation, gamma: &FpMatrix, p: u64) -> Result<(), String> {
    let res = rep.map_named("a").ok_or("no res")?;
    let tr = rep.map_named("b").ok_or("no tr")?;
    check(rep.validate(), || "relations violated".into())?;
    check(res.mul(tr) == norm(gamma, p), || "res∘tr ≠ Σγ^i".into())?;
    check(tr.mul(res).is_zero(), || "tr∘res ≠ 0".into())?;
    if let Some(c) = rep.map_named("c") {
        check(*c == FpMatrix::identity(gamma.field(), gamma.rows()).sub(gamma), || "c ≠ 1 − γ".into())?;
    }
    Ok(())
}

fn c12_mackey() -> Outcome {
    let mut checked = 0;
    for p in [2u64, 3, 5] {
        let f = PrimeField::new(p).map_err(err)?;
        let c = constant_mackey_rep(p).map_err(err)?;
        mackey_relations(&c, &FpMatrix::identity(f, 1), p).map_err(|e| format!("constant p={p}: {e}"))?;
        check(decompose(&c).map_err(err)?.is_indecomposable(), || format!("constant p={p} decomposes"))?;
        let n = p as usize;
        let mut gammas = vec![FpMatrix::from_fn(f, n, n, |i, j| u32::from(i == (j + 1) % n))];
        // unipotent Jordan blocks J_k(1), k ≤ p, have order dividing p
        for k in 1..=n {
            gammas.push(FpMatrix::from_fn(f, k, k, |i, j| u32::from(i == j || j == i + 1)));
        }
        for g in &gammas {
            let r = fixed_point_rep(p, g).map_err(err)?;
            mackey_relations(&r, g, p).map_err(|e| format!("fixed points p={p}: {e}"))?;
            checked += 1;
        }
        checked += 1;
    }
    Ok(format!("{checked} representations"))
}

fn main() {
    let ctx = KleinContext::new().expect("Klein context");
    let criteria: Vec<Criterion> = vec![
        ("indecomposable counts", Box::new(c1_counts)),
        ("C_2 dictionary", Box::new(c2_dictionary)),
        ("orbit oracle", Box::new(c3_oracle)),
        ("Hom table", Box::new(|| c4_hom_table(&ctx))),
        ("relative Ext table", Box::new(|| c5_ext_table(&ctx))),
        ("CM scan", Box::new(|| c6_cm_scan(&ctx))),
        ("homotopy strings", Box::new(c7_homotopy_strings)),
        ("full faithfulness", Box::new(c8_full_faithfulness)),
        ("strict families", Box::new(c9_strict_families)),
        ("infinite families", Box::new(c10_infinite_families)),
        ("singularity chains", Box::new(c11_singularity)),
        ("Mackey relations", Box::new(c12_mackey)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(e) => {
                println!("FAIL {:>2} {name}: {e} [{secs:.2}s]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
