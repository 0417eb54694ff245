//! SVG renderings of the report's diagnostic panels. Every figure gets a CSV
//! twin holding exactly the plotted numbers; the SVGs are views, never
//! sources.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::report::DiagnosticReport;
use crate::rootogram::Rootogram;

/// Writes the figure set for a report into `out_dir/plots/`, returning the
/// manifest of files written.
pub fn render_plots(report: &DiagnosticReport, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let plots = out_dir.join("plots");
    fs::create_dir_all(&plots)?;
    let mut manifest = Vec::new();

    manifest.extend(render_local_screen(report, &plots)?);
    manifest.extend(render_global_screen(report, &plots)?);
    manifest.extend(render_tw(report, &plots)?);
    manifest.extend(render_rootogram_pair(report, &plots)?);
    manifest.extend(render_dispersion(report, &plots)?);
    Ok(manifest)
}

const FACET_W: f64 = 150.0;
const FACET_H: f64 = 110.0;
const MARGIN: f64 = 42.0;
const GRAY: &str = "#9e9e9e";
const DARK: &str = "#424242";
const BLUE: &str = "#1f77b4";
const RED: &str = "#d62728";

struct Svg {
    width: f64,
    height: f64,
    body: String,
}

impl Svg {
    fn new(width: f64, height: f64) -> Self {
        Self {
            width,
            height,
            body: String::new(),
        }
    }

    fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="{fill}"/>"#
        );
    }

    fn frame(&mut self, x: f64, y: f64, w: f64, h: f64) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{w:.2}" height="{h:.2}" fill="none" stroke="{DARK}" stroke-width="0.7"/>"#
        );
    }

    fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{stroke}" stroke-width="{width}"/>"#
        );
    }

    fn circle(&mut self, cx: f64, cy: f64, r: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r:.2}" fill="{fill}" fill-opacity="0.55"/>"#
        );
    }

    fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str) {
        if pts.is_empty() {
            return;
        }
        let mut s = String::new();
        for (x, y) in pts {
            let _ = write!(s, "{x:.2},{y:.2} ");
        }
        let _ = writeln!(
            self.body,
            r#"<polyline points="{s}" fill="none" stroke="{stroke}" stroke-width="1.2"/>"#
        );
    }

    fn text(&mut self, x: f64, y: f64, size: f64, anchor: &str, s: &str) {
        let escaped = s
            .replace('&', "&amp;")
            .replace('<', "&lt;")
            .replace('>', "&gt;");
        let _ = writeln!(
            self.body,
            r#"<text x="{x:.2}" y="{y:.2}" font-size="{size}" font-family="sans-serif" text-anchor="{anchor}" fill="{DARK}">{escaped}</text>"#
        );
    }

    fn save(self, path: &Path) -> Result<()> {
        let doc = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"0 0 {:.0} {:.0}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.width, self.height, self.width, self.height, self.body
        );
        fs::write(path, doc)?;
        Ok(())
    }
}

/// Maps data coordinates into one facet's pixel box.
struct Frame {
    x0: f64,
    y0: f64,
    w: f64,
    h: f64,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

impl Frame {
    fn new(x0: f64, y0: f64, w: f64, h: f64, xs: &[f64], ys: &[f64]) -> Self {
        let (xmin, xmax) = padded_range(xs);
        let (ymin, ymax) = padded_range(ys);
        Self {
            x0,
            y0,
            w,
            h,
            xmin,
            xmax,
            ymin,
            ymax,
        }
    }

    fn px(&self, x: f64) -> f64 {
        self.x0 + (x - self.xmin) / (self.xmax - self.xmin) * self.w
    }

    fn py(&self, y: f64) -> f64 {
        self.y0 + self.h - (y - self.ymin) / (self.ymax - self.ymin) * self.h
    }
}

fn padded_range(values: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in values {
        if v.is_finite() {
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    if !lo.is_finite() || !hi.is_finite() {
        return (0.0, 1.0);
    }
    let pad = ((hi - lo) * 0.06).max(1e-9);
    (lo - pad, hi + pad)
}

fn render_local_screen(report: &DiagnosticReport, plots: &Path) -> Result<Vec<PathBuf>> {
    let covs = &report.dataset_summary.covariate_names;
    let k = report.dataset_summary.k;
    if covs.is_empty() {
        return Ok(Vec::new());
    }
    let width = MARGIN * 2.0 + FACET_W * k as f64;
    let height = MARGIN * 2.0 + FACET_H * covs.len() as f64;
    let mut svg = Svg::new(width, height);
    svg.text(
        width / 2.0,
        16.0,
        12.0,
        "middle",
        "Residuals vs covariates, faceted by group",
    );

    let csv_path = plots.join("local_screen_points.csv");
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record(["covariate", "group", "x", "residual"])?;

    for (row, cov) in covs.iter().enumerate() {
        let y0 = MARGIN + FACET_H * row as f64;
        svg.text(10.0, y0 + FACET_H / 2.0, 10.0, "start", cov);
        for g in 0..k {
            let x0 = MARGIN + FACET_W * g as f64;
            if row == 0 {
                svg.text(
                    x0 + FACET_W / 2.0,
                    MARGIN - 6.0,
                    9.0,
                    "middle",
                    &report.dataset_summary.group_names[g],
                );
            }
            let facet = report
                .plot_data
                .local_facets
                .iter()
                .find(|f| &f.covariate == cov && f.group == Some(g));
            let Some(facet) = facet else { continue };
            let frame = Frame::new(
                x0 + 4.0,
                y0 + 4.0,
                FACET_W - 8.0,
                FACET_H - 8.0,
                &facet.x,
                &facet.y,
            );
            svg.frame(x0 + 4.0, y0 + 4.0, FACET_W - 8.0, FACET_H - 8.0);
            let zero = frame.py(0.0);
            if zero > y0 && zero < y0 + FACET_H {
                svg.line(x0 + 4.0, zero, x0 + FACET_W - 4.0, zero, GRAY, 0.5);
            }
            for (xv, yv) in facet.x.iter().zip(&facet.y) {
                svg.circle(frame.px(*xv), frame.py(*yv), 1.4, BLUE);
                w.write_record([cov.clone(), g.to_string(), format!("{xv}"), format!("{yv}")])?;
            }
        }
    }
    w.flush()?;
    let svg_path = plots.join("local_screen.svg");
    svg.save(&svg_path)?;
    Ok(vec![svg_path, csv_path])
}

fn render_global_screen(report: &DiagnosticReport, plots: &Path) -> Result<Vec<PathBuf>> {
    let facets = &report.plot_data.global_facets;
    if facets.is_empty() {
        return Ok(Vec::new());
    }
    let per_row = facets.len().min(4);
    let rows = facets.len().div_ceil(per_row);
    let width = MARGIN * 2.0 + 1.4 * FACET_W * per_row as f64;
    let height = MARGIN * 2.0 + 1.4 * FACET_H * rows as f64;
    let mut svg = Svg::new(width, height);
    svg.text(
        width / 2.0,
        16.0,
        12.0,
        "middle",
        "Estimated log-degrees vs covariates",
    );

    let csv_path = plots.join("global_screen_points.csv");
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record(["covariate", "x", "alpha_hat"])?;

    for (idx, facet) in facets.iter().enumerate() {
        let (fw, fh) = (1.4 * FACET_W, 1.4 * FACET_H);
        let x0 = MARGIN + fw * (idx % per_row) as f64;
        let y0 = MARGIN + fh * (idx / per_row) as f64;
        svg.text(x0 + fw / 2.0, y0 + 10.0, 10.0, "middle", &facet.covariate);
        let frame = Frame::new(x0 + 4.0, y0 + 14.0, fw - 8.0, fh - 22.0, &facet.x, &facet.y);
        svg.frame(x0 + 4.0, y0 + 14.0, fw - 8.0, fh - 22.0);
        for (xv, yv) in facet.x.iter().zip(&facet.y) {
            svg.circle(frame.px(*xv), frame.py(*yv), 1.6, BLUE);
            w.write_record([facet.covariate.clone(), format!("{xv}"), format!("{yv}")])?;
        }
    }
    w.flush()?;
    let svg_path = plots.join("global_screen.svg");
    svg.save(&svg_path)?;
    Ok(vec![svg_path, csv_path])
}

fn render_tw(report: &DiagnosticReport, plots: &Path) -> Result<Vec<PathBuf>> {
    let curve = &report.plot_data.tw_density;
    let t_obs = report.tw_result.statistic;
    let width = 460.0;
    let height = 300.0;
    let mut svg = Svg::new(width, height);
    svg.text(
        width / 2.0,
        16.0,
        12.0,
        "middle",
        &format!(
            "Group-correlation test: T = {:.2}, p = {:.4}",
            t_obs, report.tw_result.p_value
        ),
    );
    let xs: Vec<f64> = curve.iter().map(|&(t, _)| t).collect();
    let ys: Vec<f64> = curve.iter().map(|&(_, d)| d).collect();
    let frame = Frame::new(MARGIN, 30.0, width - 2.0 * MARGIN, height - 70.0, &xs, &ys);
    svg.frame(MARGIN, 30.0, width - 2.0 * MARGIN, height - 70.0);
    let pts: Vec<(f64, f64)> = curve
        .iter()
        .map(|&(t, d)| (frame.px(t), frame.py(d)))
        .collect();
    svg.polyline(&pts, BLUE);
    let xo = frame.px(t_obs.clamp(frame.xmin, frame.xmax));
    svg.line(xo, 30.0, xo, height - 40.0, RED, 1.5);
    svg.text(
        xo,
        height - 26.0,
        10.0,
        "middle",
        &format!("T = {t_obs:.2}"),
    );
    svg.text(
        width / 2.0,
        height - 8.0,
        10.0,
        "middle",
        "reference density of T under no correlation",
    );

    let csv_path = plots.join("tw_test_curve.csv");
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record(["t", "density", "observed_t"])?;
    for (t, d) in curve {
        w.write_record([format!("{t}"), format!("{d}"), String::new()])?;
    }
    w.write_record([String::new(), String::new(), format!("{t_obs}")])?;
    w.flush()?;

    let svg_path = plots.join("tw_test.svg");
    svg.save(&svg_path)?;
    Ok(vec![svg_path, csv_path])
}

fn rootogram_panel(svg: &mut Svg, x0: f64, y0: f64, w: f64, h: f64, root: &Rootogram, label: &str) {
    let sqrt_exp: Vec<f64> = root.expc.iter().map(|e| e.sqrt()).collect();
    let mut ys: Vec<f64> = root.bar_low.clone();
    ys.extend_from_slice(&root.bar_high);
    ys.extend_from_slice(&sqrt_exp);
    ys.push(0.0);
    let xs: Vec<f64> = root.support.iter().map(|&j| j as f64).collect();
    let frame = Frame::new(x0, y0 + 12.0, w, h - 20.0, &xs, &ys);
    svg.frame(x0, y0 + 12.0, w, h - 20.0);
    svg.text(x0 + w / 2.0, y0 + 9.0, 9.0, "middle", label);

    let bar_w = (w / xs.len().max(1) as f64 * 0.8).max(0.8);
    for (idx, &j) in root.support.iter().enumerate() {
        let darker = j > 0 && j % 5 == 0;
        let fill = if darker { DARK } else { GRAY };
        let top = frame.py(root.bar_high[idx]);
        let bottom = frame.py(root.bar_low[idx]);
        svg.rect(
            frame.px(j as f64) - bar_w / 2.0,
            top,
            bar_w,
            (bottom - top).max(0.2),
            fill,
        );
    }
    let curve: Vec<(f64, f64)> = root
        .support
        .iter()
        .enumerate()
        .map(|(idx, &j)| (frame.px(j as f64), frame.py(sqrt_exp[idx])))
        .collect();
    svg.polyline(&curve, RED);
    let zero = frame.py(0.0);
    svg.line(x0, zero, x0 + w, zero, DARK, 0.6);
}

fn render_rootogram_pair(report: &DiagnosticReport, plots: &Path) -> Result<Vec<PathBuf>> {
    let mut manifest = Vec::new();
    for (name, overall, groups) in [
        (
            "poisson",
            &report.rootograms.poisson_overall,
            &report.rootograms.poisson_groups,
        ),
        (
            "negbinomial",
            &report.rootograms.neg_binomial_overall,
            &report.rootograms.neg_binomial_groups,
        ),
    ] {
        // overall panel
        let width = 520.0;
        let height = 320.0;
        let mut svg = Svg::new(width, height);
        svg.text(
            width / 2.0,
            16.0,
            12.0,
            "middle",
            &format!("Hanging rootogram, {name} fit (sqrt scale; multiples of 5 darker)"),
        );
        rootogram_panel(
            &mut svg,
            MARGIN,
            26.0,
            width - 2.0 * MARGIN,
            height - 60.0,
            overall,
            "all cells",
        );
        let svg_path = plots.join(format!("rootogram_overall_{name}.svg"));
        svg.save(&svg_path)?;

        let csv_path = plots.join(format!("rootogram_overall_{name}_plot.csv"));
        write_rootogram_plot_csv(&csv_path, std::slice::from_ref(overall), None)?;
        manifest.push(svg_path);
        manifest.push(csv_path);

        // per-group grid
        let k = groups.len();
        if k > 0 {
            let per_row = k.min(5);
            let rows = k.div_ceil(per_row);
            let width = MARGIN * 2.0 + FACET_W * per_row as f64;
            let height = MARGIN * 2.0 + FACET_H * rows as f64;
            let mut svg = Svg::new(width, height);
            svg.text(
                width / 2.0,
                16.0,
                12.0,
                "middle",
                &format!("Group rootograms, {name} fit"),
            );
            for (g, root) in groups.iter().enumerate() {
                let x0 = MARGIN + FACET_W * (g % per_row) as f64;
                let y0 = MARGIN + FACET_H * (g / per_row) as f64;
                rootogram_panel(
                    &mut svg,
                    x0 + 3.0,
                    y0,
                    FACET_W - 6.0,
                    FACET_H - 4.0,
                    root,
                    &report.dataset_summary.group_names[g],
                );
            }
            let svg_path = plots.join(format!("rootogram_groups_{name}.svg"));
            svg.save(&svg_path)?;
            let csv_path = plots.join(format!("rootogram_groups_{name}_plot.csv"));
            write_rootogram_plot_csv(&csv_path, groups, Some(&report.dataset_summary.group_names))?;
            manifest.push(svg_path);
            manifest.push(csv_path);
        }
    }
    Ok(manifest)
}

fn write_rootogram_plot_csv(
    path: &Path,
    roots: &[Rootogram],
    group_names: Option<&[String]>,
) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "scope",
        "j",
        "bar_low",
        "bar_high",
        "sqrt_exp",
        "is_multiple_of_5",
    ])?;
    for (idx, root) in roots.iter().enumerate() {
        let scope = match group_names {
            Some(names) => names.get(idx).cloned().unwrap_or_else(|| idx.to_string()),
            None => "overall".to_string(),
        };
        for (i, &j) in root.support.iter().enumerate() {
            w.write_record([
                scope.clone(),
                j.to_string(),
                format!("{}", root.bar_low[i]),
                format!("{}", root.bar_high[i]),
                format!("{}", root.expc[i].sqrt()),
                format!("{}", u8::from(j > 0 && j % 5 == 0)),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn render_dispersion(report: &DiagnosticReport, plots: &Path) -> Result<Vec<PathBuf>> {
    let panel = &report.dispersion_panel;
    if panel.is_empty() {
        return Ok(Vec::new());
    }
    let width = (MARGIN * 2.0 + 26.0 * panel.len() as f64).max(360.0);
    let height = 300.0;
    let mut svg = Svg::new(width, height);
    svg.text(
        width / 2.0,
        16.0,
        12.0,
        "middle",
        "Dispersion ratio by group (Poisson fit)",
    );
    let xs: Vec<f64> = panel.iter().map(|r| r.group as f64).collect();
    let mut ys: Vec<f64> = panel.iter().map(|r| r.ratio).collect();
    ys.push(1.0);
    ys.push(0.0);
    let frame = Frame::new(MARGIN, 30.0, width - 2.0 * MARGIN, height - 80.0, &xs, &ys);
    svg.frame(MARGIN, 30.0, width - 2.0 * MARGIN, height - 80.0);
    let ref_y = frame.py(1.0);
    svg.line(MARGIN, ref_y, width - MARGIN, ref_y, RED, 1.0);
    svg.text(width - MARGIN + 4.0, ref_y + 3.0, 9.0, "start", "1");
    for r in panel {
        svg.circle(frame.px(r.group as f64), frame.py(r.ratio), 3.0, BLUE);
        let label_y = height - 38.0;
        svg.text(
            frame.px(r.group as f64),
            label_y,
            8.0,
            "middle",
            report
                .dataset_summary
                .group_names
                .get(r.group)
                .map(String::as_str)
                .unwrap_or(""),
        );
    }

    let csv_path = plots.join("dispersion_plot.csv");
    let mut w = csv::Writer::from_path(&csv_path)?;
    w.write_record(["group", "ratio", "reference"])?;
    for r in panel {
        w.write_record([r.group.to_string(), format!("{}", r.ratio), "1".to_string()])?;
    }
    w.flush()?;

    let svg_path = plots.join("dispersion.svg");
    svg.save(&svg_path)?;
    Ok(vec![svg_path, csv_path])
}
