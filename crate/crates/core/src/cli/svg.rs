//! Minimal line-plot SVG writer for the figure outputs. No styling
//! knobs beyond what the two figures need: framed axes, light grid,
//! polyline series, legend.

/// Matplotlib-like default cycle.
pub const PALETTE: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"];

pub struct Series {
    pub label: String,
    pub color: String,
    pub points: Vec<(f64, f64)>,
}

pub struct Plot {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.abs() >= 1e4 || v.abs() < 1e-2 {
        return format!("{v:.1e}");
    }
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

impl Plot {
    pub fn render(&self) -> String {
        let (w, h) = (800.0, 500.0);
        let (ml, mr, mt, mb) = (72.0, 26.0, 46.0, 56.0);
        let finite = self
            .series
            .iter()
            .flat_map(|s| s.points.iter())
            .filter(|(x, y)| x.is_finite() && y.is_finite());
        let mut xmin = f64::INFINITY;
        let mut xmax = f64::NEG_INFINITY;
        let mut ymin = f64::INFINITY;
        let mut ymax = f64::NEG_INFINITY;
        for (x, y) in finite {
            xmin = xmin.min(*x);
            xmax = xmax.max(*x);
            ymin = ymin.min(*y);
            ymax = ymax.max(*y);
        }
        if !xmin.is_finite() {
            (xmin, xmax, ymin, ymax) = (0.0, 1.0, 0.0, 1.0);
        }
        if xmax - xmin <= 0.0 {
            xmin -= 0.5;
            xmax += 0.5;
        }
        let pad = 0.05 * (ymax - ymin);
        let (ymin, ymax) = if ymax - ymin <= 0.0 {
            (ymin - 0.5, ymax + 0.5)
        } else {
            (ymin - pad, ymax + pad)
        };
        let sx = |x: f64| ml + (x - xmin) / (xmax - xmin) * (w - ml - mr);
        let sy = |y: f64| h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb);

        let mut out = String::with_capacity(16 * 1024);
        out.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {w} {h}\" \
             font-family=\"Helvetica, Arial, sans-serif\">\n"
        ));
        out.push_str(&format!(
            "<rect width=\"{w}\" height=\"{h}\" fill=\"#ffffff\"/>\n"
        ));
        for i in 0..=5 {
            let t = i as f64 / 5.0;
            let xv = xmin + t * (xmax - xmin);
            let yv = ymin + t * (ymax - ymin);
            let (gx, gy) = (sx(xv), sy(yv));
            out.push_str(&format!(
                "<line x1=\"{gx:.1}\" y1=\"{mt}\" x2=\"{gx:.1}\" y2=\"{:.1}\" \
                 stroke=\"#e6e6e6\"/>\n",
                h - mb
            ));
            out.push_str(&format!(
                "<line x1=\"{ml}\" y1=\"{gy:.1}\" x2=\"{:.1}\" y2=\"{gy:.1}\" \
                 stroke=\"#e6e6e6\"/>\n",
                w - mr
            ));
            out.push_str(&format!(
                "<text x=\"{gx:.1}\" y=\"{:.1}\" font-size=\"12\" fill=\"#333\" \
                 text-anchor=\"middle\">{}</text>\n",
                h - mb + 18.0,
                fmt_tick(xv)
            ));
            out.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" fill=\"#333\" \
                 text-anchor=\"end\">{}</text>\n",
                ml - 8.0,
                gy + 4.0,
                fmt_tick(yv)
            ));
        }
        out.push_str(&format!(
            "<rect x=\"{ml}\" y=\"{mt}\" width=\"{:.1}\" height=\"{:.1}\" \
             fill=\"none\" stroke=\"#333333\"/>\n",
            w - ml - mr,
            h - mt - mb
        ));
        for s in &self.series {
            let pts: Vec<String> = s
                .points
                .iter()
                .filter(|(x, y)| x.is_finite() && y.is_finite())
                .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            out.push_str(&format!(
                "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.6\" \
                 points=\"{}\"/>\n",
                s.color,
                pts.join(" ")
            ));
        }
        for (i, s) in self.series.iter().enumerate() {
            let y = mt + 18.0 + 18.0 * i as f64;
            let x = w - mr - 200.0;
            out.push_str(&format!(
                "<line x1=\"{x:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" \
                 stroke=\"{}\" stroke-width=\"2\"/>\n",
                x + 22.0,
                s.color
            ));
            out.push_str(&format!(
                "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"12\" fill=\"#333\">{}</text>\n",
                x + 28.0,
                y + 4.0,
                escape(&s.label)
            ));
        }
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"26\" font-size=\"15\" fill=\"#111\" \
             text-anchor=\"middle\">{}</text>\n",
            (ml + w - mr) / 2.0,
            escape(&self.title)
        ));
        out.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"13\" fill=\"#333\" \
             text-anchor=\"middle\">{}</text>\n",
            (ml + w - mr) / 2.0,
            h - 14.0,
            escape(&self.x_label)
        ));
        out.push_str(&format!(
            "<text x=\"20\" y=\"{:.1}\" font-size=\"13\" fill=\"#333\" \
             text-anchor=\"middle\" transform=\"rotate(-90 20 {:.1})\">{}</text>\n",
            (mt + h - mb) / 2.0,
            (mt + h - mb) / 2.0,
            escape(&self.y_label)
        ));
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_wellformed_document() {
        let plot = Plot {
            title: "demo".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            series: vec![Series {
                label: "curve <1>".into(),
                color: PALETTE[0].into(),
                points: (0..50).map(|i| (i as f64 * 0.1, (i as f64 * 0.1).sin())).collect(),
            }],
        };
        let svg = plot.render();
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("polyline"));
        assert!(svg.contains("curve &lt;1&gt;"));
        assert!(!svg.contains("NaN"));
    }

    #[test]
    fn survives_degenerate_input() {
        let plot = Plot {
            title: "empty".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            series: vec![Series {
                label: "flat".into(),
                color: PALETTE[1].into(),
                points: vec![(1.0, 2.0), (1.0, 2.0), (f64::NAN, 0.0)],
            }],
        };
        let svg = plot.render();
        assert!(svg.contains("</svg>"));
        assert!(!svg.contains("NaN"));
    }
}
