//! Static SVG pictures of the prismatic and fiberwise subdivisions.

use std::fmt::Write;

use gerst_core::formula::Formula;
use gerst_core::subdivision::{fiberwise_sigma, sigma_u, PrismPoint, SimplexPoint, ThickCellPoint};

use crate::error::{Error, Result};

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

type Point = (f64, f64);

/// Vertex `j` of `Δⁿ` scaled to `size`.
fn vertex(n: usize, j: usize, size: f64) -> SimplexPoint<f64> {
    let mut c = vec![0.0; n + 1];
    c[j] = size;
    SimplexPoint::new(size, c).expect("vertex lies on the simplex")
}

/// `samples + 1` points from `a` to `b`.
fn segment(a: &SimplexPoint<f64>, b: &SimplexPoint<f64>, size: f64, samples: usize) -> Vec<SimplexPoint<f64>> {
    (0..=samples)
        .map(|s| {
            let t = s as f64 / samples as f64;
            let c = a.coords.iter().zip(&b.coords).map(|(x, y)| (1.0 - t) * x + t * y).collect();
            SimplexPoint::new(size, c).expect("segment stays on the simplex")
        })
        .collect()
}

/// Edges of the 1-skeleton of `Δ^{dims[0]} × Δ^{dims[1]} × ..`, as sampled
/// polylines of product points.
fn skeleton(dims: &[usize], sizes: &[f64], samples: usize) -> Vec<Vec<Vec<SimplexPoint<f64>>>> {
    let mut out = Vec::new();
    for (f, &df) in dims.iter().enumerate() {
        for u in 0..=df {
            for w in u + 1..=df {
                let line = segment(&vertex(df, u, sizes[f]), &vertex(df, w, sizes[f]), sizes[f], samples);
                // every choice of vertices in the other factors
                let others: Vec<usize> = (0..dims.len()).filter(|&i| i != f).collect();
                let count: usize = others.iter().map(|&i| dims[i] + 1).product();
                for mut code in 0..count {
                    let mut fixed = vec![None; dims.len()];
                    for &i in &others {
                        fixed[i] = Some(vertex(dims[i], code % (dims[i] + 1), sizes[i]));
                        code /= dims[i] + 1;
                    }
                    let poly = line
                        .iter()
                        .map(|p| (0..dims.len()).map(|i| fixed[i].clone().unwrap_or_else(|| p.clone())).collect())
                        .collect();
                    out.push(poly);
                }
            }
        }
    }
    out
}

fn plot(n: usize, x: &SimplexPoint<f64>) -> Point {
    let v: [Point; 3] = if n == 1 { [(40.0, 60.0), (460.0, 60.0), (0.0, 0.0)] } else { [(40.0, 440.0), (460.0, 440.0), (250.0, 76.3)] };
    x.coords.iter().enumerate().fold((0.0, 0.0), |(a, b), (j, s)| (a + s * v[j].0, b + s * v[j].1))
}

fn polyline(out: &mut String, pts: &[Point], color: &str) {
    let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
        path.join(" ")
    );
}

fn label(out: &mut String, at: Point, text: &str, color: &str) {
    let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}" font-size="13" fill="{color}" text-anchor="middle">{text}</text>"#, at.0, at.1);
}

fn document(width: u32, height: u32, title: &str, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n<title>{title}</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{body}</svg>\n"
    )
}

/// The pieces `σ_u(Δᵖ × Δⁿ⁻ᵖ)` of `Δⁿ`, `n ∈ {1, 2}`, drawn with `samples`
/// segments per prism edge.
pub fn prismatic(n: usize, u: f64, samples: usize) -> Result<String> {
    if !(1..=2).contains(&n) {
        return Err(Error::Usage(format!("can only draw the subdivision of a 1- or 2-simplex, not {n}")));
    }
    if !(u > 0.0 && u < 1.0) || samples == 0 {
        return Err(Error::Usage("need 0 < u < 1 and at least one sample".into()));
    }
    let mut body = String::new();
    for p in 0..=n {
        let color = COLORS[p % COLORS.len()];
        for poly in skeleton(&[p, n - p], &[1.0, 1.0], samples) {
            let pts = poly
                .into_iter()
                .map(|mut pr| {
                    let right = pr.pop().expect("two factors");
                    let left = pr.pop().expect("two factors");
                    Ok(plot(n, &sigma_u(n, &u, &PrismPoint::new(left, right))?))
                })
                .collect::<Result<Vec<Point>>>()?;
            polyline(&mut body, &pts, color);
        }
        let bary = |d: usize| SimplexPoint::new(1.0, vec![1.0 / (d + 1) as f64; d + 1]).expect("barycentre");
        let mut at = plot(n, &sigma_u(n, &u, &PrismPoint::new(bary(p), bary(n - p)))?);
        if n == 1 {
            at.1 += 25.0 + 15.0 * p as f64;
        }
        label(&mut body, at, &format!("Δ{p}×Δ{}", n - p), color);
    }
    let height = if n == 1 { 140 } else { 480 };
    Ok(document(500, height, &format!("prismatic subdivision of the {n}-simplex, u = {u}"), &body))
}

/// Text listing of the images of prism vertices under `σ_u`.
pub fn prismatic_vertices(n: usize, u: f64) -> Result<String> {
    let mut out = String::new();
    for p in 0..=n {
        for i in 0..=p {
            for j in 0..=n - p {
                let x = PrismPoint::new(vertex(p, i, 1.0), vertex(n - p, j, 1.0));
                let y = sigma_u(n, &u, &x)?;
                let coords: Vec<String> = y.coords.iter().map(|c| format!("{c:.6}")).collect();
                let _ = writeln!(out, "p={p} v=({i},{j}) -> ({})", coords.join(", "));
            }
        }
    }
    Ok(out)
}

/// The fiberwise subdivision of `Δᵏ × 𝓕_f` for `f` with two symbols and
/// `dim f + k = 2`: each top `k`-thickening is drawn as a region of the square.
pub fn fiberwise(f: &Formula, k: usize, samples: usize) -> Result<String> {
    let v = f.valences();
    if v.iter().sum::<usize>() + k != 2 || v.iter().filter(|&&d| d > 0).count() != 1 || samples == 0 {
        return Err(Error::Usage(format!("can only draw a square: {f} with k = {k} is not two-dimensional")));
    }
    let sizes = vec![1.0; f.type_n()];
    let total: f64 = sizes.iter().sum();
    let axis = v.iter().position(|&d| d > 0).expect("one symbol with entries");
    let to_square = |a: &SimplexPoint<f64>, y: &ThickCellPoint<f64>| -> Point {
        let fx = if k == 0 { 0.0 } else { a.coords[0] / total };
        (60.0 + 380.0 * fx, 440.0 - 380.0 * y.coords[axis].coords[0])
    };
    let mut body = String::new();
    let _ = writeln!(body, r##"<rect x="60" y="60" width="380" height="380" fill="none" stroke="#999"/>"##);
    for (idx, g) in f.top_thickenings(k).iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let gv = g.valences();
        for poly in skeleton(&gv, &sizes, samples) {
            let pts = poly
                .into_iter()
                .map(|coords| {
                    let (a, y) = fiberwise_sigma(&sizes, &ThickCellPoint::new(g.clone(), coords)?)?;
                    Ok(to_square(&a, &y))
                })
                .collect::<Result<Vec<Point>>>()?;
            polyline(&mut body, &pts, color);
        }
        let bary: Vec<SimplexPoint<f64>> = gv
            .iter()
            .zip(&sizes)
            .map(|(&d, &s)| SimplexPoint::new(s, vec![s / (d + 1) as f64; d + 1]).expect("barycentre"))
            .collect();
        let (a, y) = fiberwise_sigma(&sizes, &ThickCellPoint::new(g.clone(), bary)?)?;
        label(&mut body, to_square(&a, &y), &g.to_string(), color);
    }
    Ok(document(500, 500, &format!("fiberwise subdivision for {f}, k = {k}"), &body))
}
