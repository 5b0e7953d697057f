//! Self-contained SVG charts: band scatter, probability bars, LDOS
//! heatmap. No plotting library — every chart is a few hundred lines of
//! primitives with axes, ticks, legends, and a parameter annotation so
//! each figure documents the run that produced it. Output is
//! deterministic; the only optional element is a timestamp corner note.

const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 46.0;
const MARGIN_BOTTOM: f64 = 52.0;

pub const LEFT_COLOR: &str = "#d62728";
pub const RIGHT_COLOR: &str = "#1f77b4";
pub const BULK_COLOR: &str = "#b9bfc7";
const AXIS_COLOR: &str = "#333333";
const GRID_COLOR: &str = "#e4e7eb";
const NOTE_COLOR: &str = "#888888";

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Low-level SVG assembly: fixed-precision pixel coordinates keep the
/// output deterministic.
pub struct Canvas {
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    pub fn new(width: f64, height: f64) -> Canvas {
        let mut body = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
             viewBox=\"0 0 {width} {height}\" font-family=\"Helvetica,Arial,sans-serif\">\n"
        );
        body.push_str(&format!(
            "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>\n"
        ));
        Canvas {
            width,
            height,
            body,
        }
    }

    pub fn rect(&mut self, x: f64, y: f64, w: f64, h: f64, fill: &str) {
        self.body.push_str(&format!(
            "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{w:.2}\" height=\"{h:.2}\" fill=\"{fill}\"/>\n"
        ));
    }

    pub fn circle(&mut self, cx: f64, cy: f64, r: f64, fill: &str) {
        self.body.push_str(&format!(
            "<circle cx=\"{cx:.2}\" cy=\"{cy:.2}\" r=\"{r:.2}\" fill=\"{fill}\"/>\n"
        ));
    }

    pub fn line(&mut self, x1: f64, y1: f64, x2: f64, y2: f64, stroke: &str, width: f64) {
        self.body.push_str(&format!(
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
             stroke=\"{stroke}\" stroke-width=\"{width:.2}\"/>\n"
        ));
    }

    pub fn text(&mut self, x: f64, y: f64, size: f64, fill: &str, anchor: &str, s: &str) {
        self.body.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"{size:.1}\" fill=\"{fill}\" \
             text-anchor=\"{anchor}\">{}</text>\n",
            esc(s)
        ));
    }

    /// Text rotated 90° counter-clockwise about its anchor (y-axis label).
    pub fn text_vertical(&mut self, x: f64, y: f64, size: f64, fill: &str, s: &str) {
        self.body.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"{size:.1}\" fill=\"{fill}\" \
             text-anchor=\"middle\" transform=\"rotate(-90 {x:.2} {y:.2})\">{}</text>\n",
            esc(s)
        ));
    }

    pub fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

/// Maps data coordinates into the plot area (pixel y grows downward).
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub left: f64,
    pub top: f64,
    pub width: f64,
    pub height: f64,
}

impl Frame {
    pub fn fit(canvas_w: f64, canvas_h: f64, x: (f64, f64), y: (f64, f64)) -> Frame {
        Frame {
            x_min: x.0,
            x_max: x.1,
            y_min: y.0,
            y_max: y.1,
            left: MARGIN_LEFT,
            top: MARGIN_TOP,
            width: canvas_w - MARGIN_LEFT - MARGIN_RIGHT,
            height: canvas_h - MARGIN_TOP - MARGIN_BOTTOM,
        }
    }

    pub fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x_min) / (self.x_max - self.x_min) * self.width
    }

    pub fn py(&self, y: f64) -> f64 {
        self.top + (self.y_max - y) / (self.y_max - self.y_min) * self.height
    }
}

/// Round ticks at a 1/2/5 × 10^k step covering `[lo, hi]`.
pub fn nice_ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let span = hi - lo;
    if !(span > 0.0) || !span.is_finite() {
        return vec![lo];
    }
    let raw = span / target.max(1) as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = if norm <= 1.0 {
        mag
    } else if norm <= 2.0 {
        2.0 * mag
    } else if norm <= 5.0 {
        5.0 * mag
    } else {
        10.0 * mag
    };
    let mut ticks = Vec::new();
    let mut k = (lo / step).ceil();
    // Snap -0.0 and accumulated noise onto exact multiples.
    while k * step <= hi + 1e-9 * span {
        let v = k * step;
        ticks.push(if v.abs() < step * 1e-9 { 0.0 } else { v });
        k += 1.0;
    }
    ticks
}

/// Tick label with only as many decimals as the step needs.
pub fn fmt_tick(v: f64, step: f64) -> String {
    let decimals = if step >= 1.0 {
        0
    } else {
        (-step.log10().floor()) as usize
    };
    format!("{v:.decimals$}")
}

/// Axis lines, ticks, labels, and a title annotation line; `grid_lines`
/// adds light guides across the plot (off for heatmaps).
#[allow(clippy::too_many_arguments)]
pub fn draw_axes(
    c: &mut Canvas,
    f: &Frame,
    x_ticks: &[f64],
    y_ticks: &[f64],
    x_label: &str,
    y_label: &str,
    title: &str,
    annotation: &str,
    grid_lines: bool,
) {
    let x_step = if x_ticks.len() >= 2 {
        x_ticks[1] - x_ticks[0]
    } else {
        1.0
    };
    let y_step = if y_ticks.len() >= 2 {
        y_ticks[1] - y_ticks[0]
    } else {
        1.0
    };
    for &tx in x_ticks {
        let px = f.px(tx);
        if grid_lines {
            c.line(px, f.top, px, f.top + f.height, GRID_COLOR, 1.0);
        }
        c.line(px, f.top + f.height, px, f.top + f.height + 5.0, AXIS_COLOR, 1.0);
        c.text(
            px,
            f.top + f.height + 18.0,
            11.0,
            AXIS_COLOR,
            "middle",
            &fmt_tick(tx, x_step),
        );
    }
    for &ty in y_ticks {
        let py = f.py(ty);
        if grid_lines {
            c.line(f.left, py, f.left + f.width, py, GRID_COLOR, 1.0);
        }
        c.line(f.left - 5.0, py, f.left, py, AXIS_COLOR, 1.0);
        c.text(f.left - 8.0, py + 4.0, 11.0, AXIS_COLOR, "end", &fmt_tick(ty, y_step));
    }
    // Plot border on top of the grid.
    c.line(f.left, f.top, f.left, f.top + f.height, AXIS_COLOR, 1.0);
    c.line(
        f.left,
        f.top + f.height,
        f.left + f.width,
        f.top + f.height,
        AXIS_COLOR,
        1.0,
    );
    c.line(f.left + f.width, f.top, f.left + f.width, f.top + f.height, AXIS_COLOR, 1.0);
    c.line(f.left, f.top, f.left + f.width, f.top, AXIS_COLOR, 1.0);

    c.text(
        f.left + f.width / 2.0,
        f.top + f.height + 38.0,
        13.0,
        AXIS_COLOR,
        "middle",
        x_label,
    );
    c.text_vertical(18.0, f.top + f.height / 2.0, 13.0, AXIS_COLOR, y_label);
    c.text(f.left, 18.0, 14.0, AXIS_COLOR, "start", title);
    c.text(f.left, 34.0, 11.0, NOTE_COLOR, "start", annotation);
}

/// Bottom-right generation note, present only when a timestamp is.
pub fn stamp(c: &mut Canvas, stamp: Option<&str>) {
    if let Some(s) = stamp {
        let (w, h) = (c.width, c.height);
        c.text(w - 8.0, h - 8.0, 9.0, NOTE_COLOR, "end", &format!("generated {s}"));
    }
}

/// Five-stop dark-to-bright colormap for heatmaps, `t` in [0, 1].
pub fn heat_color(t: f64) -> String {
    const STOPS: [(f64, f64, f64); 5] = [
        (68.0, 1.0, 84.0),
        (59.0, 82.0, 139.0),
        (33.0, 145.0, 140.0),
        (94.0, 201.0, 98.0),
        (253.0, 231.0, 37.0),
    ];
    let t = t.clamp(0.0, 1.0) * (STOPS.len() - 1) as f64;
    let i = (t.floor() as usize).min(STOPS.len() - 2);
    let frac = t - i as f64;
    let mix = |a: f64, b: f64| (a + frac * (b - a)).round() as u8;
    let (r0, g0, b0) = STOPS[i];
    let (r1, g1, b1) = STOPS[i + 1];
    format!("#{:02x}{:02x}{:02x}", mix(r0, r1), mix(g0, g1), mix(b0, b1))
}
