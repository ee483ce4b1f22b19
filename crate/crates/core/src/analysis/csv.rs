//! CSV emission. One row per grid point, `.` decimal separator, shortest
//! round-trip float formatting.

use std::io::Write;

use crate::error::{Error, Result};

use super::degree::DegreePanel;
use super::spectral::SpectralRow;
use super::sweep::SweepResult;

pub const SWEEP_HEADER: [&str; 22] = [
    "scenario_id",
    "mode",
    "gamma",
    "rho",
    "n_s",
    "K",
    "ell",
    "n",
    "k",
    "Q",
    "ebn0_db",
    "ka",
    "trials",
    "errors",
    "pe",
    "ci95",
    "peeled_frac_mean",
    "turbo_iters_mean",
    "seed",
    "e1",
    "e2",
    "e3",
];

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

pub fn write_sweep_csv<W: Write>(out: W, scenario_id: &str, res: &SweepResult) -> Result<()> {
    let c = &res.config;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER).map_err(csv_err)?;
    for p in &res.points {
        let rec = [
            scenario_id.to_string(),
            c.mode.as_str().to_string(),
            c.gamma.to_string(),
            c.rho.to_string(),
            c.n_s().to_string(),
            c.num_users().to_string(),
            c.n.to_string(),
            c.n.to_string(),
            c.k().to_string(),
            "1".to_string(),
            p.ebn0_db.to_string(),
            c.activity_label(),
            p.trials.to_string(),
            p.errors.to_string(),
            p.pe.to_string(),
            p.ci95.to_string(),
            p.peeled_frac_mean.to_string(),
            p.turbo_iters_mean.to_string(),
            c.seed.to_string(),
            p.e1.to_string(),
            p.e2.to_string(),
            p.e3.to_string(),
        ];
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_degree_csv<W: Write>(
    out: W,
    gamma: usize,
    rho: usize,
    panels: &[DegreePanel],
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "gamma",
        "rho",
        "ka",
        "seeds",
        "degree",
        "before_mean",
        "after_mean",
        "single_tons_mean",
        "peeled_frac_mean",
    ])
    .map_err(csv_err)?;
    for p in panels {
        let width = p.before.len().max(p.after.len());
        for d in 0..width {
            let rec = [
                gamma.to_string(),
                rho.to_string(),
                p.ka.to_string(),
                p.seeds.to_string(),
                d.to_string(),
                p.before.get(d).copied().unwrap_or(0.0).to_string(),
                p.after.get(d).copied().unwrap_or(0.0).to_string(),
                p.initial_single_tons_mean.to_string(),
                p.peeled_fraction_mean.to_string(),
            ];
            w.write_record(&rec).map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_spectral_csv<W: Write>(out: W, rows: &[SpectralRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["gamma", "rho", "beta", "snr", "c_opt", "cover_wyner"])
        .map_err(csv_err)?;
    for r in rows {
        let rec = [
            r.gamma.to_string(),
            r.rho.to_string(),
            r.beta.to_string(),
            r.snr.to_string(),
            r.c_opt.to_string(),
            r.cover_wyner.to_string(),
        ];
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
