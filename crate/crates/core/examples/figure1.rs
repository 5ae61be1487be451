//! Rebuild both demonstration panels straight from the library,
//! writing CSV and SVG under ./figure1_out.
//!
//! Panel a: the rescaled truncated inverses g(xi; gamma) for gamma = 50,
//! 100, 200 over five oscillation wavelengths. In the cycle coordinate
//! gamma xi / (2 pi) the three curves are nearly indistinguishable.
//! Panel b: their peak heights against w = xi/gamma, collapsing onto
//! (2/pi)/sqrt(1 + 4 w^2).
//!
//! The `figure` subcommand of the CLI does the same with canned names.

use laplaceqm::cli::svg::{Plot, Series, PALETTE};
use laplaceqm::pathology::{envelope_decay, envelope_model, profile};
use laplaceqm::transforms::point_budget_from_env;
use std::f64::consts::PI;
use std::fs;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = point_budget_from_env();
    let out = std::path::Path::new("figure1_out");
    fs::create_dir_all(out)?;
    let gammas = [50.0, 100.0, 200.0];

    // ---- panel a ----------------------------------------------------
    let mut csv = String::from("gamma,xi,gamma_xi_over_2pi,g\n");
    let mut series = Vec::new();
    for (i, &gamma) in gammas.iter().enumerate() {
        let prof = profile(gamma, 5.0 * 2.0 * PI / gamma, 16, budget)?;
        let mut points = Vec::new();
        for (&xi, &g) in prof.xi.iter().zip(&prof.g) {
            let cycles = gamma * xi / (2.0 * PI);
            csv.push_str(&format!("{gamma:.16e},{xi:.16e},{cycles:.16e},{g:.16e}\n"));
            points.push((cycles, g));
        }
        series.push(Series {
            label: format!("gamma = {gamma}"),
            color: PALETTE[i].into(),
            points,
        });
        println!("gamma = {gamma}: plateau {:.6}", prof.plateau_estimate);
    }
    fs::write(out.join("panel_a.csv"), &csv)?;
    let plot = Plot {
        title: "Rescaled truncated inverses".into(),
        x_label: "gamma xi / (2 pi)".into(),
        y_label: "g(xi; gamma)".into(),
        series,
    };
    fs::write(out.join("panel_a.svg"), plot.render())?;

    // ---- panel b ----------------------------------------------------
    let mut csv = String::from("gamma,w,envelope,model\n");
    let mut series = Vec::new();
    for (i, &gamma) in gammas.iter().enumerate() {
        let count = (100.0 / gamma / 0.05).round() as usize;
        let ws: Vec<f64> = (1..=count).map(|k| 0.05 * k as f64).collect();
        let env = envelope_decay(gamma, &ws, budget)?;
        for (&w, &e) in ws.iter().zip(&env) {
            csv.push_str(&format!(
                "{gamma:.16e},{w:.16e},{e:.16e},{:.16e}\n",
                envelope_model(w)
            ));
        }
        series.push(Series {
            label: format!("gamma = {gamma}"),
            color: PALETTE[i].into(),
            points: ws.iter().copied().zip(env).collect(),
        });
    }
    series.push(Series {
        label: "(2/pi)/sqrt(1 + 4 w^2)".into(),
        color: "#555555".into(),
        points: (1..=100).map(|k| {
            let w = 0.02 * k as f64;
            (w, envelope_model(w))
        }).collect(),
    });
    fs::write(out.join("panel_b.csv"), &csv)?;
    let plot = Plot {
        title: "Peak envelope collapse".into(),
        x_label: "w = xi / gamma".into(),
        y_label: "peak |g|".into(),
        series,
    };
    fs::write(out.join("panel_b.svg"), plot.render())?;

    println!("wrote panel_a/{{csv,svg}} and panel_b/{{csv,svg}} under {}", out.display());
    Ok(())
}
