use super::params::SystemParams;

/// Six-way power split of one epoch. Transmit powers are totals across the
/// selected antennas; RF powers are per chain.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PowerSplit {
    tx_renewable: f64,
    tx_grid: f64,
    circuit_renewable: f64,
    circuit_grid: f64,
    rf_renewable: f64,
    rf_grid: f64,
}

impl PowerSplit {
    /// Split whose circuit and RF grid parts are the complements of the
    /// renewable parts, so the circuit and RF totals always match `params`.
    /// Renewable shares are clamped into `[0, P_C]` and `[0, P_RF]`.
    pub fn balanced(
        params: &SystemParams,
        tx_renewable: f64,
        tx_grid: f64,
        circuit_renewable: f64,
        rf_renewable: f64,
    ) -> Self {
        let circuit_renewable = circuit_renewable.clamp(0.0, params.p_circuit);
        let rf_renewable = rf_renewable.clamp(0.0, params.p_rf);
        Self {
            tx_renewable: tx_renewable.max(0.0),
            tx_grid: tx_grid.max(0.0),
            circuit_renewable,
            circuit_grid: params.p_circuit - circuit_renewable,
            rf_renewable,
            rf_grid: params.p_rf - rf_renewable,
        }
    }

    /// Splits an epoch's consumption so that `renewable` watts come from the
    /// battery, spent on transmission first, then circuit, then RF chains.
    pub fn from_renewable_budget(params: &SystemParams, antennas: usize, p_tx: f64, renewable: f64) -> Self {
        let eta = params.pa_efficiency;
        let mut left = renewable.max(0.0);
        let tx_draw = (p_tx / eta).min(left);
        left -= tx_draw;
        let tx_renewable = (tx_draw * eta).min(p_tx);
        let circuit_renewable = left.min(params.p_circuit);
        left -= circuit_renewable;
        let rf_renewable = if antennas > 0 {
            (left / antennas as f64).min(params.p_rf)
        } else {
            0.0
        };
        Self::balanced(params, tx_renewable, p_tx - tx_renewable, circuit_renewable, rf_renewable)
    }

    /// Unchecked constructor, e.g. for externally supplied schedules.
    pub fn from_raw(
        tx_renewable: f64,
        tx_grid: f64,
        circuit_renewable: f64,
        circuit_grid: f64,
        rf_renewable: f64,
        rf_grid: f64,
    ) -> Self {
        Self {
            tx_renewable,
            tx_grid,
            circuit_renewable,
            circuit_grid,
            rf_renewable,
            rf_grid,
        }
    }

    pub fn tx_renewable(&self) -> f64 {
        self.tx_renewable
    }
    pub fn tx_grid(&self) -> f64 {
        self.tx_grid
    }
    pub fn circuit_renewable(&self) -> f64 {
        self.circuit_renewable
    }
    pub fn circuit_grid(&self) -> f64 {
        self.circuit_grid
    }
    pub fn rf_renewable(&self) -> f64 {
        self.rf_renewable
    }
    pub fn rf_grid(&self) -> f64 {
        self.rf_grid
    }

    pub fn tx_total(&self) -> f64 {
        self.tx_renewable + self.tx_grid
    }

    /// Power drawn from the battery.
    pub fn renewable_draw(&self, antennas: usize, eta: f64) -> f64 {
        self.tx_renewable / eta + self.circuit_renewable + antennas as f64 * self.rf_renewable
    }

    /// Power drawn from the grid.
    pub fn grid_draw(&self, antennas: usize, eta: f64) -> f64 {
        self.tx_grid / eta + self.circuit_grid + antennas as f64 * self.rf_grid
    }

    pub fn components(&self) -> [f64; 6] {
        [
            self.tx_renewable,
            self.tx_grid,
            self.circuit_renewable,
            self.circuit_grid,
            self.rf_renewable,
            self.rf_grid,
        ]
    }
}

/// Antenna count and power split of one epoch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochAllocation {
    pub antennas: usize,
    pub power: PowerSplit,
}

/// Per-epoch antenna selection and power allocation over the horizon.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Schedule {
    pub epochs: Vec<EpochAllocation>,
}

impl Schedule {
    pub fn new(epochs: Vec<EpochAllocation>) -> Self {
        Self { epochs }
    }

    pub fn len(&self) -> usize {
        self.epochs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.epochs.is_empty()
    }

    pub fn antenna_counts(&self) -> Vec<usize> {
        self.epochs.iter().map(|e| e.antennas).collect()
    }

    /// Renewable energy (J) drained in each epoch.
    pub fn renewable_drains(&self, lengths: &[f64], eta: f64) -> Vec<f64> {
        self.epochs
            .iter()
            .zip(lengths)
            .map(|(e, t)| e.power.renewable_draw(e.antennas, eta) * t)
            .collect()
    }

    /// Every epoch silent: no transmission, circuit and RF powered from the grid.
    pub fn silent(params: &SystemParams, antennas: usize, epochs: usize) -> Self {
        let power = PowerSplit::balanced(params, 0.0, 0.0, 0.0, 0.0);
        Self::new(vec![EpochAllocation { antennas, power }; epochs])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_split_enforces_totals() {
        let p = SystemParams::default();
        let s = PowerSplit::balanced(&p, 1.0, 2.0, 500.0, -3.0);
        assert_eq!(s.circuit_renewable(), p.p_circuit);
        assert_eq!(s.circuit_grid(), 0.0);
        assert_eq!(s.rf_renewable(), 0.0);
        assert_eq!(s.rf_grid(), p.p_rf);
    }

    #[test]
    fn budget_is_spent_tx_first_then_circuit_then_rf() {
        let p = SystemParams::default();
        let m = 10;
        let p_tx = 3.5;
        // Enough for transmission and half the circuit.
        let budget = p_tx / p.pa_efficiency + 0.5 * p.p_circuit;
        let s = PowerSplit::from_renewable_budget(&p, m, p_tx, budget);
        assert!((s.tx_renewable() - p_tx).abs() < 1e-12);
        assert_eq!(s.tx_grid(), 0.0);
        assert!((s.circuit_renewable() - 0.5 * p.p_circuit).abs() < 1e-9);
        assert_eq!(s.rf_renewable(), 0.0);
        assert!((s.renewable_draw(m, p.pa_efficiency) - budget).abs() < 1e-9);
        let full = p.consumption(m, p_tx);
        assert!((s.renewable_draw(m, p.pa_efficiency) + s.grid_draw(m, p.pa_efficiency) - full).abs() < 1e-9);
    }
}
