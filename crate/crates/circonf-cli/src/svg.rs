//! SVG rendering of configurations and motion paths: a 1000×1000 viewport
//! with a 5% margin, circles stroked and unfilled. Rendering is for human
//! inspection only, so plain f64 arithmetic is fine here.

use circonf::geometry::{Circle, LabeledConfiguration};
use circonf::motion::MotionPath;
use circonf::Rat;
use num_traits::ToPrimitive;

const VIEW: f64 = 1000.0;
const MARGIN: f64 = 50.0;

fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

struct Frame {
    scale: f64,
    off_x: f64,
    off_y: f64,
}

impl Frame {
    /// Fits the bounding box of all circles into the viewport, y up.
    fn fit<'a>(circles: impl Iterator<Item = &'a Circle>) -> Frame {
        let mut min_x = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut min_y = f64::INFINITY;
        let mut max_y = f64::NEG_INFINITY;
        for c in circles {
            let (x, y, r) = (to_f64(&c.cx), to_f64(&c.cy), to_f64(&c.r));
            min_x = min_x.min(x - r);
            max_x = max_x.max(x + r);
            min_y = min_y.min(y - r);
            max_y = max_y.max(y + r);
        }
        if !min_x.is_finite() {
            (min_x, max_x, min_y, max_y) = (-1.0, 1.0, -1.0, 1.0);
        }
        let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
        let scale = (VIEW - 2.0 * MARGIN) / span;
        let off_x = MARGIN + ((VIEW - 2.0 * MARGIN) - (max_x - min_x) * scale) / 2.0 - min_x * scale;
        let off_y = MARGIN + ((VIEW - 2.0 * MARGIN) - (max_y - min_y) * scale) / 2.0 + max_y * scale;
        Frame { scale, off_x, off_y }
    }

    fn x(&self, v: f64) -> f64 {
        self.off_x + v * self.scale
    }

    fn y(&self, v: f64) -> f64 {
        self.off_y - v * self.scale
    }
}

fn circle_tag(frame: &Frame, c: &Circle, stroke: &str, dashed: bool) -> String {
    format!(
        "  <circle cx=\"{:.3}\" cy=\"{:.3}\" r=\"{:.3}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"2\"{}/>\n",
        frame.x(to_f64(&c.cx)),
        frame.y(to_f64(&c.cy)),
        to_f64(&c.r) * frame.scale,
        if dashed { " stroke-dasharray=\"6 4\"" } else { "" },
    )
}

fn label_tag(frame: &Frame, c: &Circle, label: usize) -> String {
    format!(
        "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"18\" text-anchor=\"middle\">{label}</text>\n",
        frame.x(to_f64(&c.cx)),
        frame.y(to_f64(&c.cy)),
    )
}

fn document(body: String) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{VIEW}\" height=\"{VIEW}\" viewBox=\"0 0 {VIEW} {VIEW}\">\n{body}</svg>\n"
    )
}

pub fn render_config(config: &LabeledConfiguration, labels: bool) -> String {
    let frame = Frame::fit(config.circles.iter());
    let mut body = String::new();
    for (i, c) in config.circles.iter().enumerate() {
        body.push_str(&circle_tag(&frame, c, "black", false));
        if labels {
            body.push_str(&label_tag(&frame, c, i + 1));
        }
    }
    document(body)
}

/// Draws the first keyframe solid, the last dashed, and the center
/// trajectories as gray polylines.
pub fn render_path(path: &MotionPath, labels: bool) -> String {
    let frame = Frame::fit(path.keyframes().iter().flat_map(|kf| kf.config.circles.iter()));
    let mut body = String::new();
    let n = path.n();
    for label in 1..=n {
        let points: Vec<String> = path
            .keyframes()
            .iter()
            .map(|kf| {
                let c = kf.config.circle(label);
                format!("{:.3},{:.3}", frame.x(to_f64(&c.cx)), frame.y(to_f64(&c.cy)))
            })
            .collect();
        body.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n",
            points.join(" ")
        ));
    }
    let first = path.start_config();
    let last = path.end_config();
    for (i, c) in first.circles.iter().enumerate() {
        body.push_str(&circle_tag(&frame, c, "black", false));
        if labels {
            body.push_str(&label_tag(&frame, c, i + 1));
        }
    }
    for c in &last.circles {
        body.push_str(&circle_tag(&frame, c, "#1f5fbf", true));
    }
    document(body)
}
