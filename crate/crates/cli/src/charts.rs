//! Figure composition: turns scan/evolution/LDOS results into annotated
//! SVG charts using the primitives in [`crate::svg`].

use quasicryst_core::{BoundaryMode, LdosMap, Side};

use crate::svg::{
    draw_axes, heat_color, nice_ticks, stamp, Canvas, Frame, BULK_COLOR, LEFT_COLOR, RIGHT_COLOR,
};

const CANVAS_W: f64 = 860.0;
const CANVAS_H: f64 = 600.0;
const BAR_COLOR: &str = "#4c78a8";

/// Integer ticks for a 1-based site axis: multiples of a round step, with
/// site 1 always present.
fn site_ticks(n: usize) -> Vec<f64> {
    let mut step = 1usize;
    for candidate in [1usize, 2, 5, 10, 20, 50, 100, 200, 500, 1000] {
        step = candidate;
        if n / candidate <= 8 {
            break;
        }
    }
    let mut ticks = vec![1.0];
    let mut k = step;
    while k <= n {
        if k > 1 {
            ticks.push(k as f64);
        }
        k += step;
    }
    ticks
}

fn padded(lo: f64, hi: f64, frac: f64) -> (f64, f64) {
    let span = hi - lo;
    if span > 0.0 {
        (lo - frac * span, hi + frac * span)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

/// Energy-vs-phase scatter with in-gap edge modes color-coded by side.
pub fn bands_chart(
    grid_pi: &[f64],
    energies: &[Vec<f64>],
    modes: &[Vec<BoundaryMode>],
    annotation: &str,
    timestamp: Option<&str>,
) -> String {
    let (x_min, x_max) = if grid_pi.len() > 1 {
        (grid_pi[0], *grid_pi.last().expect("non-empty grid"))
    } else {
        (grid_pi[0] - 0.5, grid_pi[0] + 0.5)
    };
    let mut e_min = f64::INFINITY;
    let mut e_max = f64::NEG_INFINITY;
    for row in energies {
        for &e in row {
            e_min = e_min.min(e);
            e_max = e_max.max(e);
        }
    }
    let (y_min, y_max) = padded(e_min, e_max, 0.06);

    let mut c = Canvas::new(CANVAS_W, CANVAS_H);
    let f = Frame::fit(CANVAS_W, CANVAS_H, (x_min, x_max), (y_min, y_max));
    draw_axes(
        &mut c,
        &f,
        &nice_ticks(x_min, x_max, 8),
        &nice_ticks(y_min, y_max, 6),
        "φ / π",
        "energy",
        "Eigenvalue bands across the modulation phase",
        annotation,
        true,
    );

    // Bulk first, edge modes on top so they stay visible.
    for (i, row) in energies.iter().enumerate() {
        let mut is_edge = vec![false; row.len()];
        for mode in &modes[i] {
            is_edge[mode.mode_index] = true;
        }
        let x = f.px(grid_pi[i]);
        for (m, &e) in row.iter().enumerate() {
            if !is_edge[m] {
                c.circle(x, f.py(e), 1.0, BULK_COLOR);
            }
        }
        for mode in &modes[i] {
            let color = match mode.side {
                Side::Left => LEFT_COLOR,
                Side::Right => RIGHT_COLOR,
            };
            c.circle(x, f.py(mode.energy), 2.0, color);
        }
    }

    // Legend, top-right inside the frame.
    let lx = f.left + f.width - 150.0;
    let ly = f.top + 16.0;
    c.circle(lx, ly - 4.0, 3.0, LEFT_COLOR);
    c.text(lx + 8.0, ly, 11.0, "#333333", "start", "left-edge mode");
    c.circle(lx, ly + 12.0, 3.0, RIGHT_COLOR);
    c.text(lx + 8.0, ly + 16.0, 11.0, "#333333", "start", "right-edge mode");

    stamp(&mut c, timestamp);
    c.finish()
}

/// Site-probability bar chart with the injection site marked.
pub fn distribution_chart(
    dist: &[f64],
    input_site: usize,
    annotation: &str,
    result_note: &str,
    timestamp: Option<&str>,
) -> String {
    let n = dist.len();
    let y_max = dist.iter().cloned().fold(0.0_f64, f64::max).max(1e-12);
    let (_, y_hi) = padded(0.0, y_max, 0.08);

    let mut c = Canvas::new(CANVAS_W, CANVAS_H);
    let f = Frame::fit(CANVAS_W, CANVAS_H, (0.5, n as f64 + 0.5), (0.0, y_hi));
    draw_axes(
        &mut c,
        &f,
        &site_ticks(n),
        &nice_ticks(0.0, y_hi, 5),
        "site",
        "probability",
        "Output probability distribution",
        annotation,
        true,
    );

    let slot = f.width / n as f64;
    let bar_w = (slot * 0.85).max(0.5);
    for (idx, &p) in dist.iter().enumerate() {
        let site = idx + 1;
        let x_left = f.px(site as f64) - bar_w / 2.0;
        let y_top = f.py(p);
        let h = f.top + f.height - y_top;
        if h > 0.01 {
            let fill = if site == input_site { LEFT_COLOR } else { BAR_COLOR };
            c.rect(x_left, y_top, bar_w, h, fill);
        }
    }
    // Injection marker above its slot, even when the bar is invisible.
    let ix = f.px(input_site as f64);
    c.line(ix, f.top + 2.0, ix, f.top + 12.0, LEFT_COLOR, 1.5);
    c.text(ix, f.top + 24.0, 10.0, LEFT_COLOR, "middle", "input");
    c.text(
        f.left + f.width - 8.0,
        f.top + f.height - 10.0,
        12.0,
        "#333333",
        "end",
        result_note,
    );

    stamp(&mut c, timestamp);
    c.finish()
}

/// Energy × site heatmap of the local density of states, √-scaled so the
/// faint in-gap rows do not vanish next to the band maxima.
pub fn ldos_chart(map: &LdosMap, annotation: &str, timestamp: Option<&str>) -> String {
    let n = map.site_count();
    let grid = map.energy_grid();
    let rows = grid.len();
    let v_max = map
        .density_rows()
        .iter()
        .flat_map(|row| row.iter().cloned())
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);

    let mut c = Canvas::new(CANVAS_W, CANVAS_H);
    let f = Frame::fit(
        CANVAS_W,
        CANVAS_H,
        (0.5, n as f64 + 0.5),
        (grid[0], grid[rows - 1]),
    );

    // Background = colormap zero, then only visibly-colored cells.
    c.rect(f.left, f.top, f.width, f.height, &heat_color(0.0));
    let cell_w = f.width / n as f64;
    let cell_h = f.height / rows as f64;
    for (i, row) in map.density_rows().iter().enumerate() {
        let y = f.py(grid[i]) - cell_h / 2.0;
        let y = y.max(f.top).min(f.top + f.height - cell_h);
        for (site_idx, &d) in row.iter().enumerate() {
            let t = (d / v_max).sqrt();
            if t >= 0.002 {
                let x = f.px((site_idx + 1) as f64) - cell_w / 2.0;
                c.rect(x, y, cell_w + 0.3, cell_h + 0.3, &heat_color(t));
            }
        }
    }

    draw_axes(
        &mut c,
        &f,
        &site_ticks(n),
        &nice_ticks(grid[0], grid[rows - 1], 6),
        "site",
        "energy",
        "Local density of states",
        annotation,
        false,
    );

    stamp(&mut c, timestamp);
    c.finish()
}
