use btlab_core::arith::ext::{ExtField, FieldKind, KElem};
use btlab_core::arith::fq::is_prime;
use btlab_core::arith::WittRingSpec;
use btlab_core::building::{
    ball, distance, norm_distance, norm_from_embedding, norm_to_simplex, point_distance_of_norms, DiagonalNorm,
    DistanceMode, Simplex,
};
use btlab_core::cartier::{
    cartier_to_simplex, eta_fixed_lattice, noncritical_example, random_special_d2, reference_module, Framing, Isocrystal,
    SpecialCartierModule, WMat,
};
use btlab_core::ffbundle::{
    bc_dimensions, classify_deg1_by_enumeration, classify_deg1_trivial_modifications, classify_od_modifications,
    dictionary_table, dimension_solve, newton_above_hodge, newton_above_hodge_by_enumeration, twin_ext_sequence,
    BCDimension, BundleClass,
};
use btlab_core::lattice::{invariant_factors, parse_matrix_rows, reference_chain, LatticeBasis};
use btlab_core::rat::{Mat, Q};
use btlab_core::specfiber::localmodel::expected_count;
use btlab_core::specfiber::{
    component_incidence, dl_count, dl_count_brute_range, dl_space, flagged_sufficiency, local_model_equations,
    semistable_chart, specialize_point, DlMethod, LocalModelForm, RigidPoint,
};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use serde_json::{json, Value};

use crate::args::*;
use crate::artifact::{DotGraph, Rendered};
use crate::CliError;

type Out = Result<(Value, Vec<String>, Option<DotGraph>), CliError>;

// guards checked before dispatch
const MAX_P: u64 = 97;
const MAX_D: usize = 8;
const MAX_BALL_VERTICES: f64 = 2.0e5;
const MAX_THREADS: usize = 256;

pub fn validate(g: &Global) -> Result<(), CliError> {
    if !is_prime(g.p) || g.p > MAX_P {
        return Err(CliError::input(format!("--p must be a prime <= {MAX_P}, got {}", g.p)));
    }
    if g.d == 0 || g.d > MAX_D {
        return Err(CliError::input(format!("--d must lie in 1..={MAX_D}")));
    }
    if g.m == 0 {
        return Err(CliError::input("--m must be >= 1"));
    }
    if g.precision == 0 {
        return Err(CliError::input("--precision must be >= 1"));
    }
    if g.threads == 0 || g.threads > MAX_THREADS {
        return Err(CliError::input(format!("--threads must lie in 1..={MAX_THREADS}")));
    }
    Ok(())
}

pub fn dispatch(cli: &Cli) -> Result<Rendered, CliError> {
    validate(&cli.global)?;
    let g = &cli.global;
    let (result, provenance, dot) = match &cli.command {
        Command::Ball(a) => cmd_ball(g, a),
        Command::Dist(a) => cmd_dist(g, a),
        Command::Diagnorm(a) => cmd_diagnorm(g, a),
        Command::Specialize(a) => cmd_specialize(g, a),
        Command::Slopes(a) => cmd_slopes(g, a),
        Command::Modifications(a) => cmd_modifications(g, a),
        Command::Bcdim(a) => cmd_bcdim(g, a),
        Command::Dlcount(a) => cmd_dlcount(g, a),
        Command::Cartier(a) => cmd_cartier(g, a),
        Command::Localmodel(a) => cmd_localmodel(g, a),
        Command::Chart(a) => cmd_chart(g, a),
        Command::Batch(a) => cmd_batch(a),
    }?;
    let request = serde_json::to_value(cli).expect("requests serialize");
    let command = request["command"]["name"].as_str().unwrap_or("?").to_string();
    let doc = crate::artifact::ArtifactDocument {
        schema_version: crate::artifact::SCHEMA_VERSION,
        command,
        request,
        result,
        provenance,
    };
    Ok(Rendered { doc, dot })
}

fn lattice_json(l: &LatticeBasis) -> Value {
    json!({ "label": l.label(), "index": l.index })
}

fn simplex_json(s: &Simplex) -> Value {
    json!({ "lattices": s.lattices.iter().map(|l| l.label()).collect::<Vec<_>>(), "indices": s.indices() })
}

fn qs(v: &[Q]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn bc_json(x: BCDimension) -> Value {
    json!({ "dim": x.dim, "ht": x.ht })
}

fn parse_lattice(s: &str, g: &Global) -> Result<LatticeBasis, CliError> {
    let l = LatticeBasis::parse_label(s, g.p)?;
    if l.d != g.d {
        return Err(CliError::input(format!("lattice '{s}' has rank {}, expected --d {}", l.d, g.d)));
    }
    Ok(l)
}

fn parse_q_list(s: &str) -> Result<Vec<Q>, CliError> {
    s.split(',').map(|x| x.trim().parse::<Q>().map_err(|_| CliError::input(format!("cannot parse '{x}' as a rational")))).collect()
}

fn basis_rows(s: Option<&str>, d: usize) -> Result<Mat, CliError> {
    match s {
        None => Ok(Mat::identity(d)),
        Some(s) => {
            let m = parse_matrix_rows(s)?;
            if m.rows != d || m.cols != d {
                return Err(CliError::input(format!("basis must be {d} x {d}")));
            }
            Ok(m)
        }
    }
}

fn cmd_ball(g: &Global, a: &BallArgs) -> Out {
    let center = match &a.center {
        Some(s) => parse_lattice(s, g)?,
        None => LatticeBasis::standard(g.p, g.d),
    };
    // neighbours of a vertex: proper nonzero subspaces of F_p^d
    let pf = g.p as f64;
    let nbrs: f64 = (1..g.d).map(|k| (0..k).map(|i| (pf.powi((g.d - i) as i32) - 1.0) / (pf.powi((i + 1) as i32) - 1.0)).product::<f64>()).sum();
    if nbrs.max(1.0).powi(g.radius as i32) > MAX_BALL_VERTICES {
        return Err(btlab_core::Error::EnumerationTooLarge(format!("ball of radius {} would exceed {MAX_BALL_VERTICES} vertices", g.radius)).into());
    }
    let b = ball(&center, g.radius)?;
    let vertices: Vec<Value> =
        b.vertices.iter().zip(&b.depth).map(|(l, d)| json!({ "label": l.label(), "index": l.index, "depth": d })).collect();
    let mut result = json!({
        "center": lattice_json(&b.vertices[0]),
        "radius": g.radius,
        "vertex_count": b.vertices.len(),
        "edge_count": b.edges.len(),
        "vertices": vertices,
        "edges": b.edges.iter().map(|&(i, j)| json!([i, j])).collect::<Vec<_>>(),
    });
    let mut notes = vec!["vertices are homothety representatives with index in [0, d), labelled by Hermite basis rows".to_string()];
    if a.incidence {
        let inc = component_incidence(&b)?;
        result["incidence"] = json!({
            "components": inc.components.len(),
            "intersections": inc.intersections.iter().map(|(c, s)| json!({ "components": c, "simplex": simplex_json(s) })).collect::<Vec<_>>(),
        });
        notes.push("incidence: one component per vertex, one intersection per simplex of the ball".into());
    }
    let dot = DotGraph {
        name: "ball".into(),
        nodes: b.vertices.iter().zip(&b.depth).map(|(l, d)| (l.label(), *d)).collect(),
        edges: b.edges.clone(),
    };
    Ok((result, notes, Some(dot)))
}

fn cmd_dist(g: &Global, a: &DistArgs) -> Out {
    let x = parse_lattice(&a.a, g)?;
    let y = parse_lattice(&a.b, g)?;
    let mode = match a.mode {
        DistMode::Brv => DistanceMode::Brv,
        DistMode::Homothety => DistanceMode::Homothety,
    };
    let dist = distance(&x, &y, mode)?;
    let inv = invariant_factors(&x, &y)?;
    Ok((
        json!({
            "a": lattice_json(&x),
            "b": lattice_json(&y),
            "distance": dist.to_string(),
            "invariant_factors": inv.exponents,
        }),
        vec!["distance from the invariant factors of b relative to a".into()],
        None,
    ))
}

fn norm_json(n: &DiagonalNorm) -> Value {
    let c = n.canonical();
    let (chain, weights, shift) = c.chain_with_weights();
    json!({
        "c": qs(&c.c),
        "basis": (0..c.d()).map(|i| qs(&c.basis.row(i)).join(",")).collect::<Vec<_>>().join(";"),
        "levels": qs(&c.levels()),
        "chain": chain.iter().map(lattice_json).collect::<Vec<_>>(),
        "weights": qs(&weights),
        "shift": shift.to_string(),
    })
}

fn cmd_diagnorm(g: &Global, a: &DiagnormArgs) -> Out {
    let c = parse_q_list(&a.c)?;
    let n = DiagonalNorm::new(g.p, basis_rows(a.basis.as_deref(), c.len())?, c)?;
    let mut result = json!({ "norm": norm_json(&n), "simplex": simplex_json(&norm_to_simplex(&n)) });
    if let Some(oc) = &a.other_c {
        let c2 = parse_q_list(oc)?;
        let m = DiagonalNorm::new(g.p, basis_rows(a.other_basis.as_deref(), c2.len())?, c2)?;
        let direct = norm_distance(&n, &m)?;
        let via = point_distance_of_norms(&n, &m)?;
        result["other"] = norm_json(&m);
        result["distance"] = json!({ "norms": direct.to_string(), "building_points": via.to_string(), "agree": direct == via });
    }
    Ok((result, vec!["log_p ||x|| = max(c_i - v_p(x_i)) in the basis e_i; canonical c lies in [0, 1)".into()], None))
}

fn parse_field(s: &str, p: u64) -> Result<ExtField, CliError> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("rational") {
        return Ok(ExtField::rational(p));
    }
    let (kind, n) = s.split_once(':').ok_or_else(|| CliError::input(format!("unknown field '{s}'")))?;
    let n: usize = n.parse().map_err(|_| CliError::input(format!("bad degree in '{s}'")))?;
    Ok(match kind {
        "eisenstein" | "ramified" => ExtField::eisenstein(p, n)?,
        "unramified" => ExtField::unramified(p, n)?,
        _ => return Err(CliError::input(format!("unknown field kind '{kind}'"))),
    })
}

/// A polynomial in y such as "2 - y/3 + 4*y^2".
fn parse_poly(s: &str) -> Result<Vec<(Q, usize)>, CliError> {
    let bad = || CliError::input(format!("cannot parse polynomial '{s}'"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let b = t.as_bytes();
    for i in 1..=b.len() {
        if i == b.len() || ((b[i] == b'+' || b[i] == b'-') && b[i - 1] != b'^') {
            terms.push(&t[start..i]);
            start = i;
        }
    }
    terms
        .into_iter()
        .map(|term| {
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (-1, &term[1..]),
                b'+' => (1, &term[1..]),
                _ => (1, term),
            };
            let Some(ypos) = body.find('y') else {
                return body.parse::<Q>().map(|c| (c * Q::from_integer(sign.into()), 0)).map_err(|_| bad());
            };
            let (coef, rest) = (&body[..ypos], &body[ypos + 1..]);
            let coef = coef.trim_end_matches('*');
            let c: Q = if coef.is_empty() { Q::from_integer(1.into()) } else { coef.parse().map_err(|_| bad())? };
            let (exp, div) = match rest.split_once('/') {
                Some((e, dv)) => (e, Some(dv.parse::<Q>().map_err(|_| bad())?)),
                None => (rest, None),
            };
            let k: usize = if exp.is_empty() { 1 } else { exp.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())? };
            let mut c = c * Q::from_integer(sign.into());
            if let Some(dv) = div {
                if dv == Q::from_integer(0.into()) {
                    return Err(bad());
                }
                c /= dv;
            }
            Ok((c, k))
        })
        .collect()
}

fn poly_to_elem(k: &ExtField, terms: &[(Q, usize)]) -> KElem {
    let mut acc = k.from_rational(Q::from_integer(0.into()));
    for (c, e) in terms {
        let mut pw = k.from_rational(Q::from_integer(1.into()));
        for _ in 0..*e {
            pw = k.mul(&pw, &k.gen());
        }
        acc = k.add(&acc, &k.scale(c, &pw));
    }
    acc
}

fn cmd_specialize(g: &Global, a: &SpecializeArgs) -> Out {
    let k = parse_field(&a.field, g.p)?;
    let coords: Vec<KElem> =
        a.point.split(';').map(|s| parse_poly(s).map(|t| poly_to_elem(&k, &t))).collect::<Result<_, _>>()?;
    let x = RigidPoint::new(k.clone(), coords)?;
    let r = specialize_point(&x)?;
    let norm = norm_from_embedding(&k, &x.coords)?;
    let kind = match k.kind {
        FieldKind::Rational => "rational",
        FieldKind::Eisenstein => "eisenstein",
        FieldKind::Unramified => "unramified",
    };
    let chain: Vec<Value> = r
        .simplex
        .lattices
        .iter()
        .zip(&r.levels)
        .zip(&r.residue_points)
        .map(|((l, n), pts)| json!({ "lattice": lattice_json(l), "level": n, "residue_point": pts }))
        .collect();
    Ok((
        json!({
            "field": { "kind": kind, "modulus": qs(&k.modulus), "ramification": k.ramification(), "residue_degree": k.residue_degree() },
            "pullback_norm_c": qs(&norm.c),
            "simplex": simplex_json(&r.simplex),
            "chain": chain,
            "components": r.component_labels,
            "avoids_rational_hyperplanes": r.avoids_rational_hyperplanes,
        }),
        vec![
            "level n: the lattice maps to m_K^n / m_K^(n+1), read through pi^-n with pi = y (ramified) or p".into(),
            "residue points: one F_p-vector per Hermite basis column, in the basis 1, y, ..., y^(f-1) of k_K".into(),
        ],
        None,
    ))
}

fn witt(g: &Global) -> Result<WittRingSpec, CliError> {
    Ok(WittRingSpec::build(g.p, g.m, g.precision)?)
}

fn module(g: &Global, kind: ModuleKind) -> Result<SpecialCartierModule, CliError> {
    let w = witt(g)?;
    Ok(match kind {
        ModuleKind::Reference => reference_module(&w, g.d)?,
        ModuleKind::Noncritical => {
            if g.d != 2 {
                return Err(CliError::input("the non-critical example has d = 2"));
            }
            noncritical_example(&w)?
        }
        ModuleKind::Random => {
            if g.d != 2 {
                return Err(CliError::input("random modules are generated for d = 2"));
            }
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(g.seed);
            random_special_d2(&w, &mut || rng.next_u64())?
        }
    })
}

fn cmd_slopes(g: &Global, a: &SlopesArgs) -> Out {
    let iso = match (&a.matrix, a.module) {
        (Some(m), _) => {
            let w = witt(g)?;
            let rows: Vec<Vec<i64>> = m
                .split(';')
                .map(|r| r.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::input(format!("cannot parse integer matrix '{m}'")))?;
            if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
                return Err(CliError::input("matrix must be square"));
            }
            let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
            Isocrystal::new(w.clone(), WMat::from_ints(&w, &refs)).twist(a.shift)
        }
        (None, Some(kind)) => module(g, kind)?.total_frobenius().twist(a.shift),
        (None, None) => return Err(CliError::input("slopes needs --matrix or --module")),
    };
    let slopes = iso.newton_slopes()?;
    Ok((
        json!({ "rank": iso.rank(), "slopes": slopes.iter().map(|s| s.to_string()).collect::<Vec<_>>() }),
        vec![format!("F = p^-shift A sigma over W(F_{}^{})[1/p], computed mod p^{}", g.p, g.m, g.precision)],
        None,
    ))
}

fn cmd_modifications(g: &Global, a: &ModificationsArgs) -> Out {
    let d = g.d as u64;
    let rows = classify_od_modifications(d)?;
    let table: Vec<Value> = rows
        .iter()
        .map(|m| {
            json!({
                "r": m.r,
                "gl_side": m.gl_side.to_string(),
                "source": m.record.source.to_string(),
                "target": m.record.target.to_string(),
                "degree": m.record.degree,
                "negative_slope": m.negative_part.map(|x| x.0.to_string()),
                "negative_multiplicity": m.negative_part.map(|x| x.1),
                "stated_multiplicity": m.stated_multiplicity,
                "note": m.note,
            })
        })
        .collect();
    let mut result = json!({ "d": d, "rows": table });
    let mut notes = vec!["targets are Hom(F, O(1/d)) of the degree 1 modifications F of O^d".to_string()];
    notes.extend(rows.iter().filter_map(|m| m.note.clone()));
    if a.report {
        let dict: Vec<Value> = dictionary_table(d)?
            .iter()
            .map(|r| {
                json!({
                    "r": r.r,
                    "slopes": r.slopes.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "isocrystal_bundle": r.isocrystal_bundle.to_string(),
                    "dualized": r.dualized.to_string(),
                    "modification": r.modification.to_string(),
                    "match": r.dualized == r.modification,
                })
            })
            .collect();
        let mut listed = classify_deg1_trivial_modifications(d)?;
        listed.sort();
        let mut nah = newton_above_hodge(d)?;
        nah.sort();
        result["dictionary"] = Value::Array(dict);
        result["checks"] = json!({
            "deg1_list_equals_enumeration": listed == classify_deg1_by_enumeration(d)?,
            "newton_list_equals_enumeration": nah == newton_above_hodge_by_enumeration(d)?,
        });
        notes.push("dictionary: an isocrystal of slope s gives O(-s); its dual is compared with the modification".into());
    }
    Ok((result, notes, None))
}

fn cmd_bcdim(g: &Global, a: &BcdimArgs) -> Out {
    if a.twin {
        let seq = twin_ext_sequence(g.d as u64)?;
        let x = dimension_solve(&seq)?;
        let terms: Vec<Value> =
            seq.iter().map(|t| json!({ "kind": format!("{:?}", t.kind), "dimension": t.dim.map(bc_json) })).collect();
        return Ok((
            json!({ "d": g.d, "sequence": terms, "solved": bc_json(x) }),
            vec!["0 -> H0(O(1/d - 1)) -> H0(O(1/d)) -> Ext1(C, O(1/d)) -> H1(O(1/d - 1)) -> H1(O(1/d)) -> 0".into()],
            None,
        ));
    }
    let s = a.bundle.as_deref().ok_or_else(|| CliError::input("bcdim needs --bundle or --twin"))?;
    let b: BundleClass = s.parse()?;
    let (h0, h1) = bc_dimensions(&b);
    Ok((
        json!({ "bundle": b.to_string(), "rank": b.rank(), "degree": b.degree(), "h0": bc_json(h0), "h1": bc_json(h1) }),
        vec!["Dimension = (C-dimension, E-dimension)".into()],
        None,
    ))
}

fn brute_parallel(q: u64, d: usize, m: u32, threads: usize) -> Result<u64, CliError> {
    let space = dl_space(q, d, m)?;
    let total = space.raw_vectors();
    let chunk = total.div_ceil(threads as u64).max(1);
    let count = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads as u64)
            .map(|t| {
                let space = &space;
                s.spawn(move || dl_count_brute_range(space, t * chunk, ((t + 1) * chunk).min(total)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
    });
    Ok(count)
}

/// Counts that fit an i64 stay JSON numbers; larger ones become decimal strings.
fn count_json(n: i128) -> Value {
    i64::try_from(n).map(Value::from).unwrap_or_else(|_| Value::String(n.to_string()))
}

fn cmd_dlcount(g: &Global, a: &DlcountArgs) -> Out {
    let q = g.q.ok_or_else(|| CliError::input("dlcount needs --q"))?;
    let brute = || brute_parallel(q, g.d, g.m, g.threads);
    let formula = || dl_count(q, g.d, g.m, DlMethod::Formula).map_err(CliError::from);
    let result = match a.method {
        DlMethodArg::Brute => json!({ "q": q, "d": g.d, "m": g.m, "method": "brute", "count": brute()? }),
        DlMethodArg::Formula => json!({ "q": q, "d": g.d, "m": g.m, "method": "formula", "count": count_json(formula()?) }),
        DlMethodArg::Both => {
            let (b, f) = (brute()?, formula()?);
            if b as i128 != f {
                return Err(btlab_core::Error::Inconsistent(format!("brute force {b} != inclusion-exclusion {f}")).into());
            }
            json!({ "q": q, "d": g.d, "m": g.m, "method": "both", "count": b })
        }
    };
    Ok((result, vec!["points of P^(d-1)(F_(q^m)) on no F_q-rational hyperplane".into()], None))
}

fn cmd_cartier(g: &Global, a: &CartierArgs) -> Out {
    let m = module(g, a.module)?;
    let note = format!("W = W(F_{}^{}) mod p^{}", g.p, g.m, g.precision);
    let result = match &a.action {
        CartierAction::Check => {
            let r = m.check()?;
            json!({ "d": m.d, "r": m.r, "height": r.height, "height_divisible_by_d2": r.height_divisible_by_d2, "critical": r.critical })
        }
        CartierAction::Critical => json!({ "critical": m.critical_indices() }),
        CartierAction::Eta { index } => {
            if *index >= m.d {
                return Err(CliError::input(format!("--index must be < d = {}", m.d)));
            }
            let eta = eta_fixed_lattice(&m, *index)?;
            json!({
                "index": eta.index,
                "verified": eta.verify(&m),
                "generators": eta.generators.iter().map(|v| v.iter().map(|x| x.coeffs.clone()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        }
        CartierAction::Simplex { outer } => {
            let mut framing = Framing::identity(&m);
            if let Some(o) = outer {
                let h = parse_matrix_rows(o)?;
                if h.rows != m.d || h.cols != m.d {
                    return Err(CliError::input(format!("outer framing must be {} x {}", m.d, m.d)));
                }
                framing = framing.with_outer(&h);
            }
            let s = cartier_to_simplex(&m, &framing)?;
            json!({ "simplex": simplex_json(&s), "reference": simplex_json(&Simplex::new(&reference_chain(g.p, m.d)?)?) })
        }
    };
    Ok((result, vec![note, "generators list Witt coordinates in the basis 1, x, ..., x^(m-1) of each entry".into()], None))
}

fn cmd_localmodel(g: &Global, a: &LocalmodelArgs) -> Out {
    let form = match a.form {
        FormArg::Main => LocalModelForm::Main,
        FormArg::Shifted => LocalModelForm::Shifted,
    };
    let set = local_model_equations(g.d, form)?;
    let fails = set.chart_failures();
    let eqs: Vec<Value> = set
        .equations
        .iter()
        .map(|e| json!({ "family": e.family, "i": e.i, "j": e.j, "k": e.k, "equation": e.render(), "flagged": e.flagged }))
        .collect();
    let mut result = json!({
        "d": g.d,
        "form": format!("{:?}", form).to_lowercase(),
        "count": set.equations.len(),
        "expected_count": expected_count(g.d),
        "flagged_count": set.flagged().len(),
        "chart_failures": fails.iter().map(|e| e.render()).collect::<Vec<_>>(),
        "equations": eqs,
    });
    if let Some(q) = a.check_q {
        let r = flagged_sufficiency(&set, q, a.varpi)?;
        result["sufficiency"] = json!({ "q": r.q, "varpi": r.varpi, "points": r.points, "on_model": r.on_model, "mismatches": r.mismatches });
    }
    Ok((
        result,
        vec!["chart: coordinate a on copy i is relabelled i - a mod d, then T_j^(i) = x_(i-1) ... x_j and p = x_0 ... x_(d-1)".into()],
        None,
    ))
}

fn cmd_chart(g: &Global, a: &ChartArgs) -> Out {
    let s = match (&a.face, &a.simplex) {
        (Some(f), _) => {
            let chain = reference_chain(g.p, g.d)?;
            let mut idx: Vec<usize> = f
                .split(',')
                .map(|x| x.trim().parse::<usize>().ok().filter(|&j| j < g.d))
                .collect::<Option<_>>()
                .ok_or_else(|| CliError::input(format!("--face entries must lie in 0..{}", g.d)))?;
            idx.sort();
            idx.dedup();
            Simplex::new(&idx.iter().map(|&j| chain[j].clone()).collect::<Vec<_>>())?
        }
        (None, Some(s)) => Simplex::new(&s.split('|').map(|l| parse_lattice(l, g)).collect::<Result<Vec<_>, _>>()?)?,
        (None, None) => Simplex::new(&reference_chain(g.p, g.d)?)?,
    };
    let c = semistable_chart(&s);
    Ok((
        json!({
            "simplex": simplex_json(&s),
            "window_start": c.window_start,
            "variables": c.variables,
            "inverted": c.inverted,
            "relation": c.relation(),
            "special_fiber_components": c.special_fiber_components(),
        }),
        vec!["variables x_h, ..., x_(h+d-1) indexed by lattice index; p stands for the uniformizer".into()],
        None,
    ))
}

fn cmd_batch(a: &BatchArgs) -> Out {
    let text = if a.input.trim_start().starts_with('[') {
        a.input.clone()
    } else {
        std::fs::read_to_string(&a.input).map_err(|e| CliError::input(format!("cannot read {}: {e}", a.input)))?
    };
    let list: Vec<Vec<String>> =
        serde_json::from_str(&text).map_err(|e| CliError::input(format!("batch input must be a JSON array of argument arrays: {e}")))?;
    let docs: Vec<Value> = list
        .into_iter()
        .map(|argv| {
            if argv.first().is_some_and(|s| s == "batch") {
                return json!({ "error": "nested batch", "exit_code": crate::EXIT_INPUT });
            }
            match crate::parse(std::iter::once("btlab".to_string()).chain(argv)).and_then(|cli| dispatch(&cli)) {
                Ok(r) => serde_json::to_value(&r.doc).expect("documents serialize"),
                Err(e) => json!({ "error": e.message, "exit_code": e.code }),
            }
        })
        .collect();
    Ok((json!({ "documents": docs }), vec!["each entry is a full document or an error with its exit code".into()], None))
}
