#![allow(dead_code)]

use timescales::{EntryId, Params, TimeScale};

pub struct TestScale {
    pub name: &'static str,
    pub scale: TimeScale,
    pub window: (f64, f64),
    pub step: f64,
}

/// The five reference scales with their sampling windows.
pub fn test_scales() -> Vec<TestScale> {
    let mk = |name, spec: &str, window, step| TestScale { name, scale: TimeScale::parse(spec).unwrap(), window, step };
    vec![
        mk("R", "R", (-2.0, 6.0), 0.5),
        mk("Z", "Z", (-4.0, 12.0), 1.0),
        mk("hZ", "hZ:0.5", (-2.0, 6.0), 0.5),
        mk("q2", "q:2", (1.0, 512.0), 1.0),
        mk("union", "union:[0,1]+{2}+[3,4]", (0.0, 4.0), 0.2),
    ]
}

/// Parameters small enough that every entry stays finite on `q:2` up to 1024.
pub fn params() -> Params {
    Params::new(0.3, 0.7, 3)
}

impl TestScale {
    pub fn points(&self) -> Vec<f64> {
        self.scale.sample(self.window.0, self.window.1, self.step).unwrap()
    }

    pub fn kappa_points(&self) -> Vec<f64> {
        self.points().into_iter().filter(|&t| self.scale.in_kappa(t).unwrap()).collect()
    }

    pub fn admissible(&self, id: EntryId, p: &Params) -> Vec<f64> {
        self.kappa_points()
            .into_iter()
            .filter(|&t| id.entry().admissible(p, t, self.scale.mu(t).unwrap()))
            .collect()
    }
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
