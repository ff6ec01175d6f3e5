use std::f64::consts::PI;
use std::fmt::Write;

use gptlab::geometry::{Polytope, Vector};
use gptlab::bodies::ConvexBody;
use gptlab::gpt::Body;
use gptlab::Scalar;

use crate::CliError;

/// The affine plane `x_axis = value`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Plane {
    pub axis: usize,
    pub value: f64,
}

/// Parses `z=1/2`, `y=0.25` or `x2=1`.
pub fn parse_plane(s: &str, n: usize) -> Result<Plane, CliError> {
    let bad = || CliError::Parse(format!("bad plane {s:?}; expected e.g. z=1/2"));
    let (name, val) = s.split_once('=').ok_or_else(bad)?;
    let name = name.trim();
    let axis = match name {
        "x" => 0,
        "y" if n == 3 => 1,
        "z" => n - 1,
        _ => name
            .strip_prefix('x')
            .and_then(|i| i.parse::<usize>().ok())
            .ok_or_else(bad)?,
    };
    if axis >= n {
        return Err(bad());
    }
    let value = f64::parse_str(val.trim())
        .or_else(|_| gptlab::Rational::parse_str(val.trim()).map(|r| r.to_f64()))
        .map_err(|_| bad())?;
    Ok(Plane { axis, value })
}

pub struct Outline {
    pub points: Vec<[f64; 2]>,
    pub labels: Vec<([f64; 2], String)>,
    pub axes: [String; 2],
}

const RAYS: usize = 720;

fn drop_axis(x: &[f64], axis: Option<usize>) -> [f64; 2] {
    let v: Vec<f64> = x.iter().enumerate().filter(|(i, _)| Some(*i) != axis).map(|(_, v)| *v).collect();
    [v[0], v[1]]
}

fn angular_sort(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    let n = pts.len() as f64;
    let c = [pts.iter().map(|p| p[0]).sum::<f64>() / n, pts.iter().map(|p| p[1]).sum::<f64>() / n];
    pts.sort_by(|a, b| {
        let ta = (a[1] - c[1]).atan2(a[0] - c[0]);
        let tb = (b[1] - c[1]).atan2(b[0] - c[0]);
        ta.total_cmp(&tb)
    });
    pts
}

fn label_for<T: Scalar>(v: &Vector<T>) -> String {
    let n = v.len();
    if v.is_zero() {
        return "0".into();
    }
    if v.eq_s(&Vector::unit_effect(n)) {
        return "u".into();
    }
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn polytope_outline<T: Scalar>(p: &Polytope<T>, plane: Option<Plane>) -> Result<(Vec<[f64; 2]>, Vec<([f64; 2], String)>), CliError> {
    let n = p.ambient_dim();
    let (verts, axis): (Vec<Vector<T>>, Option<usize>) = match plane {
        None => (p.vertices().to_vec(), None),
        Some(pl) => {
            let mut h = p.hrep().clone();
            h.push_equality(Vector::unit(n, pl.axis), T::from_f64(pl.value));
            let sec = Polytope::from_hrep(&h).map_err(|_| CliError::EmptySection)?;
            (sec.vertices().to_vec(), Some(pl.axis))
        }
    };
    if verts.is_empty() {
        return Err(CliError::EmptySection);
    }
    let labels = verts.iter().map(|v| (drop_axis(&v.to_f64(), axis), label_for(v))).collect();
    let pts = verts.iter().map(|v| drop_axis(&v.to_f64(), axis)).collect();
    Ok((angular_sort(pts), labels))
}

fn support_outline<T: Scalar>(body: &Body<T>) -> Result<Vec<[f64; 2]>, CliError> {
    let mut out: Vec<[f64; 2]> = Vec::new();
    for k in 0..RAYS {
        let t = 2.0 * PI * k as f64 / RAYS as f64;
        let x = body
            .convex()
            .support_point(&[t.cos(), t.sin()])
            .map_err(|e| CliError::Engine(e.to_string()))?;
        let p = [x[0], x[1]];
        if out.last().is_none_or(|q| (q[0] - p[0]).hypot(q[1] - p[1]) > 1e-9) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Support of the section `K ∩ {x_k = c}` in an in-plane direction `d`:
/// the minimum over `λ` of `h_K(d + λ e_k) − λ c`, found by golden section.
fn section_support(body: &dyn ConvexBody, dir: &[f64], plane: Plane) -> Result<f64, CliError> {
    let f = |lam: f64| -> Result<f64, CliError> {
        let mut d = dir.to_vec();
        d[plane.axis] += lam;
        let (h, _) = body.support(&d).map_err(|e| CliError::Engine(e.to_string()))?;
        Ok(h - lam * plane.value)
    };
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (-1e3, 1e3);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > 1e-11 {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    Ok(fc.min(fd))
}

/// Outline of a curved section as the polygon cut out by its supporting lines.
fn section_outline<T: Scalar>(body: &Body<T>, plane: Plane) -> Result<Vec<[f64; 2]>, CliError> {
    let n = body.ambient_dim();
    let k = body.convex();
    let mut e = vec![0.0; n];
    e[plane.axis] = 1.0;
    let top = k.support(&e).map_err(|err| CliError::Engine(err.to_string()))?.0;
    let bottom = k.min_value(&e).map_err(|err| CliError::Engine(err.to_string()))?;
    let tol = 1e-9_f64.max(body.tolerance());
    if plane.value > top + tol || plane.value < bottom - tol {
        return Err(CliError::EmptySection);
    }
    let others: Vec<usize> = (0..n).filter(|&i| i != plane.axis).collect();
    let mut lines = Vec::with_capacity(RAYS);
    for j in 0..RAYS {
        let t = 2.0 * PI * j as f64 / RAYS as f64;
        let mut dir = vec![0.0; n];
        dir[others[0]] = t.cos();
        dir[others[1]] = t.sin();
        lines.push((t.cos(), t.sin(), section_support(k, &dir, plane)?));
    }
    let mut out: Vec<[f64; 2]> = Vec::new();
    for j in 0..RAYS {
        let (a1, b1, h1) = lines[j];
        let (a2, b2, h2) = lines[(j + 1) % RAYS];
        let det = a1 * b2 - a2 * b1;
        let p = [(h1 * b2 - h2 * b1) / det, (a1 * h2 - a2 * h1) / det];
        if out.last().is_none_or(|q| (q[0] - p[0]).hypot(q[1] - p[1]) > 1e-9) {
            out.push(p);
        }
    }
    Ok(out)
}

pub fn outline<T: Scalar>(body: &Body<T>, plane: Option<Plane>) -> Result<Outline, CliError> {
    let n = body.ambient_dim();
    if n > 3 {
        return Err(CliError::Parse(format!("cannot render bodies in R^{n}")));
    }
    if n == 3 && plane.is_none() {
        return Err(CliError::Parse("a plane is needed for three-dimensional bodies".into()));
    }
    let names = ["x", "y", "z"];
    let axes = match (n, plane) {
        (2, _) => ["x".to_string(), "z".to_string()],
        (_, Some(p)) => {
            let k: Vec<&str> = (0..3).filter(|&i| i != p.axis).map(|i| names[i]).collect();
            [k[0].to_string(), k[1].to_string()]
        }
        _ => unreachable!(),
    };
    let plane = if n == 2 { None } else { plane };
    let (points, labels) = match (body, plane) {
        (Body::Polytope(p), pl) => polytope_outline(p, pl)?,
        (_, None) => (support_outline(body)?, Vec::new()),
        (_, Some(pl)) => (section_outline(body, pl)?, Vec::new()),
    };
    Ok(Outline { points, labels, axes })
}

/// Closed outline as a standalone SVG document.
pub fn to_svg(o: &Outline, title: &str) -> String {
    let scale = 160.0;
    let xs = o.points.iter().map(|p| p[0]);
    let ys = o.points.iter().map(|p| p[1]);
    let (x0, x1) = (xs.clone().fold(f64::INFINITY, f64::min), xs.fold(f64::NEG_INFINITY, f64::max));
    let (y0, y1) = (ys.clone().fold(f64::INFINITY, f64::min), ys.fold(f64::NEG_INFINITY, f64::max));
    let margin = 60.0;
    let w = (x1 - x0) * scale + 2.0 * margin;
    let h = (y1 - y0) * scale + 2.0 * margin + 24.0;
    let map = |p: [f64; 2]| ((p[0] - x0) * scale + margin, (y1 - p[1]) * scale + margin + 24.0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    let _ = writeln!(s, r#"<title>{title}</title>"#);
    let _ = writeln!(s, r#"<text x="8" y="18" font-family="sans-serif" font-size="13">{title} ({}, {})</text>"#, o.axes[0], o.axes[1]);
    let path: Vec<String> = o
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let (x, y) = map(*p);
            format!("{}{x:.3},{y:.3}", if i == 0 { "M" } else { "L" })
        })
        .collect();
    let _ = writeln!(
        s,
        r##"<path d="{} Z" fill="#c9d8ef" stroke="#1f3d7a" stroke-width="1.5"/>"##,
        path.join(" ")
    );
    for (p, text) in &o.labels {
        let (x, y) = map(*p);
        let _ = writeln!(s, r##"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="#1f3d7a"/>"##);
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-family="sans-serif" font-size="11">{text}</text>"#,
            x + 5.0,
            y - 5.0
        );
    }
    s.push_str("</svg>\n");
    s
}
