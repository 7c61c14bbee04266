//! The four subcommands.

use crate::builtins::{self, Input};
use crate::output::{check_row_index, family_label, fmt_f, fmt_z, json_complex, sink, Report};
use crate::{CliError, CliResult, Figure, MatrixArgs, NodesArgs, QuadArgs, ReproduceArgs};
use poisson_quad::oracle::{
    bessel_image_laguerre, compare_with_oracle, exp_image_hermite, weighted_poly_image_jacobi,
    OracleOptions,
};
use poisson_quad::specfun::bessel_j;
use poisson_quad::{Complex64, DiscreteTransform, PolynomialFamily, QuadratureRule};
use serde_json::json;
use std::io::Write;

pub fn nodes(args: &NodesArgs) -> CliResult<()> {
    let fam = args.family.resolve()?;
    let rule = QuadratureRule::new(fam, args.n)?;
    let rows: Vec<String> = rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .enumerate()
        .map(|(k, (x, w))| format!("{},{},{}", k + 1, fmt_f(*x), fmt_f(*w)))
        .collect();
    let json_rows: Vec<_> = rule
        .nodes()
        .iter()
        .zip(rule.weights())
        .enumerate()
        .map(|(k, (x, w))| json!({"index": k + 1, "node": x, "weight": w}))
        .collect();
    let report = Report {
        format: args.format,
        head: vec![format!("family={} n={}", family_label(fam), args.n)],
        columns: "index,node,weight",
        rows,
        json: json!({
            "config": {"family": family_label(fam), "n": args.n},
            "rows": json_rows,
        }),
    };
    report.write(&mut *sink(&args.out)?)
}

pub fn matrix(args: &MatrixArgs) -> CliResult<()> {
    let fam = args.family.resolve()?;
    let rule = QuadratureRule::new(fam, args.n)?;
    let dt = DiscreteTransform::new(&rule, args.z);
    let only = check_row_index(args.j, args.n)?;
    let row_range: Vec<usize> = match only {
        Some(j) => vec![j],
        None => (0..args.n).collect(),
    };
    let mut rows = Vec::new();
    let mut json_entries = Vec::new();
    for &j in &row_range {
        let mut json_row = Vec::new();
        for k in 0..args.n {
            let t = dt.entry(j, k);
            rows.push(format!(
                "{},{},{},{}",
                j + 1,
                k + 1,
                fmt_f(t.re),
                fmt_f(t.im)
            ));
            json_row.push(json_complex(t));
        }
        json_entries.push(serde_json::Value::Array(json_row));
    }
    let report = Report {
        format: args.format,
        head: vec![format!(
            "family={} n={} z={}",
            family_label(fam),
            args.n,
            fmt_z(args.z)
        )],
        columns: "row,col,re,im",
        rows,
        json: json!({
            "config": {
                "family": family_label(fam),
                "n": args.n,
                "z": json_complex(args.z),
                "rows": row_range.iter().map(|j| j + 1).collect::<Vec<_>>(),
            },
            "entries": json_entries,
        }),
    };
    report.write(&mut *sink(&args.out)?)
}

pub fn quad(args: &QuadArgs) -> CliResult<()> {
    let fam = args.family.resolve()?;
    let rule = QuadratureRule::new(fam, args.n)?;
    let dt = DiscreteTransform::new(&rule, args.z);
    let only = check_row_index(args.j, args.n)?;
    let input = builtins::resolve(args, fam)?;

    // Oracle value (absent when the comparison was skipped), error bound,
    // and the per-row flag.
    type OracleColumns = (Option<Complex64>, Option<f64>, bool);

    struct Row {
        index: usize,
        node: f64,
        value: Complex64,
        oracle: Option<OracleColumns>,
    }

    let mut rows_data = Vec::new();
    match (&input, args.oracle) {
        (Input::Samples(_), true) => {
            return Err(CliError::Validation(
                "--oracle needs a closed-form input, not a sample file".into(),
            ));
        }
        (Input::Samples(values), false) => {
            let out = dt.apply_sampled(values)?;
            for (k, (&x, &v)) in rule.nodes().iter().zip(out.iter()).enumerate() {
                rows_data.push(Row {
                    index: k,
                    node: x,
                    value: v,
                    oracle: None,
                });
            }
        }
        (Input::Function(f), false) => {
            let out = dt.apply_fn(&**f)?;
            for (k, (&x, &v)) in rule.nodes().iter().zip(out.iter()).enumerate() {
                rows_data.push(Row {
                    index: k,
                    node: x,
                    value: v,
                    oracle: None,
                });
            }
        }
        (Input::Function(f), true) => {
            if args.z.im != 0.0 {
                return Err(CliError::Validation(
                    "--oracle integrates along the real axis and needs a real z".into(),
                ));
            }
            let compared = compare_with_oracle(&dt, &**f, &OracleOptions::default())?;
            for r in compared {
                rows_data.push(Row {
                    index: r.index,
                    node: r.y,
                    value: r.quadrature,
                    oracle: Some((r.oracle, r.abs_err, r.flagged)),
                });
            }
        }
    }
    if let Some(j) = only {
        rows_data.retain(|r| r.index == j);
    }

    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for r in &rows_data {
        let mut line = format!(
            "{},{},{},{}",
            r.index + 1,
            fmt_f(r.node),
            fmt_f(r.value.re),
            fmt_f(r.value.im)
        );
        let mut obj = json!({
            "index": r.index + 1,
            "node": r.node,
            "value": json_complex(r.value),
        });
        if let Some((oracle, abs_err, flagged)) = &r.oracle {
            match oracle {
                Some(o) => line.push_str(&format!(
                    ",{},{},{},{}",
                    fmt_f(o.re),
                    fmt_f(o.im),
                    fmt_f(abs_err.unwrap_or(f64::NAN)),
                    u8::from(*flagged)
                )),
                None => line.push_str(&format!(",nan,nan,nan,{}", u8::from(*flagged))),
            }
            let m = obj.as_object_mut().expect("row object");
            m.insert(
                "oracle".into(),
                oracle.map(json_complex).unwrap_or(serde_json::Value::Null),
            );
            m.insert(
                "abs_err".into(),
                abs_err.map(|e| json!(e)).unwrap_or(serde_json::Value::Null),
            );
            m.insert("flagged".into(), json!(flagged));
        }
        rows.push(line);
        json_rows.push(obj);
    }

    let columns: &'static str = if args.oracle {
        "index,node,re,im,oracle_re,oracle_im,abs_err,flagged"
    } else {
        "index,node,re,im"
    };
    let report = Report {
        format: args.format,
        head: vec![format!(
            "family={} n={} z={} f={} c={} degree={} oracle={}",
            family_label(fam),
            args.n,
            fmt_z(args.z),
            args.f,
            args.c,
            args.degree,
            args.oracle
        )],
        columns,
        rows,
        json: json!({
            "config": {
                "family": family_label(fam),
                "n": args.n,
                "z": json_complex(args.z),
                "f": args.f,
                "c": args.c,
                "degree": args.degree,
                "oracle": args.oracle,
            },
            "rows": json_rows,
        }),
    };
    report.write(&mut *sink(&args.out)?)
}

struct ExampleRun {
    head: Vec<String>,
    columns: &'static str,
    /// (abscissa, reference value, transform output)
    rows: Vec<(f64, f64, Complex64)>,
}

fn run_fig1() -> CliResult<ExampleRun> {
    let n = 31;
    let rule = QuadratureRule::new(PolynomialFamily::Hermite, n)?;
    let mid = n / 2;
    let y = rule.nodes()[mid];
    let f = |x: f64| Complex64::new(x.cos(), -x.sin());
    let mut rows = Vec::with_capacity(99);
    for m in 1..100 {
        let z = m as f64 / 100.0;
        let dt = DiscreteTransform::new(&rule, Complex64::new(z, 0.0));
        let out = dt.apply_fn(f)?;
        let lhs = exp_image_hermite(y, z, 1.0)?;
        rows.push((z, lhs.re, out[mid]));
    }
    Ok(ExampleRun {
        head: vec![
            "example=fig1 family=hermite n=31 f=expneg c=1 row=16".into(),
            "z sweep of the transform of exp(-ix) at the central node".into(),
        ],
        columns: "z,reference,transform_re,transform_im",
        rows,
    })
}

fn run_fig2() -> CliResult<ExampleRun> {
    let (alpha, z, c) = (0.0, 0.1, 2.0);
    let fam = PolynomialFamily::Laguerre { alpha };
    let rule = QuadratureRule::new(fam, 30)?;
    let dt = DiscreteTransform::new(&rule, Complex64::new(z, 0.0));
    let out = dt.apply_fn(|x| {
        Complex64::new(
            x.powf(0.25) * bessel_j(alpha, c * x.sqrt()).unwrap_or(f64::NAN),
            0.0,
        )
    })?;
    let mut rows = Vec::with_capacity(30);
    for (&y, &v) in rule.nodes().iter().zip(out.iter()) {
        let lhs = bessel_image_laguerre(alpha, y, z, c)?;
        rows.push((y, lhs.re, v));
    }
    Ok(ExampleRun {
        head: vec![
            "example=fig2 family=laguerre alpha=0 n=30 z=0.1 f=besselj c=2".into(),
            "transform of x^(1/4) J_0(2 sqrt(x)) against its closed-form image".into(),
        ],
        columns: "node,reference,transform_re,transform_im",
        rows,
    })
}

fn run_fig3() -> CliResult<ExampleRun> {
    let fam = PolynomialFamily::Jacobi {
        alpha: 0.0,
        beta: 0.0,
    };
    let (z, degree) = (0.25, 5usize);
    let rule = QuadratureRule::new(fam, 50)?;
    let dt = DiscreteTransform::new(&rule, Complex64::new(z, 0.0));
    let out = dt.apply_fn(|x| {
        Complex64::new(
            fam.eval(degree, x)
                .map(|p| fam.envelope(x) * p)
                .unwrap_or(f64::NAN),
            0.0,
        )
    })?;
    let mut rows = Vec::with_capacity(50);
    for (&y, &v) in rule.nodes().iter().zip(out.iter()) {
        let lhs = weighted_poly_image_jacobi(0.0, 0.0, degree, y, z)?;
        rows.push((y, lhs.re, v));
    }
    Ok(ExampleRun {
        head: vec![
            "example=fig3 family=jacobi alpha=0 beta=0 n=50 z=0.25 f=jacobi_weighted degree=5"
                .into(),
            "eigenvector scaling of the envelope-weighted degree-5 polynomial".into(),
        ],
        columns: "node,reference,transform_re,transform_im",
        rows,
    })
}

pub fn reproduce(args: &ReproduceArgs) -> CliResult<()> {
    let run = match args.figure {
        Figure::Fig1 => run_fig1()?,
        Figure::Fig2 => run_fig2()?,
        Figure::Fig3 => run_fig3()?,
    };
    let error_norm = run
        .rows
        .iter()
        .map(|(_, lhs, rhs)| (rhs - Complex64::new(*lhs, 0.0)).norm())
        .fold(0.0f64, f64::max);
    let norm_line = format!("error_norm={error_norm:.6e}");

    let mut w = sink(&args.out)?;
    for line in &run.head {
        writeln!(w, "# {line}")?;
    }
    writeln!(w, "# columns: {}", run.columns)?;
    for (a, lhs, rhs) in &run.rows {
        writeln!(
            w,
            "{},{},{},{}",
            fmt_f(*a),
            fmt_f(*lhs),
            fmt_f(rhs.re),
            fmt_f(rhs.im)
        )?;
    }
    writeln!(w, "{norm_line}")?;
    w.flush()?;
    if args.out.is_some() {
        println!("{norm_line}");
    }
    Ok(())
}
