//! Pairing of plate and 3D frequencies.

use micropolar::plate::ModeClass;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlateMode {
    pub freq_hz: f64,
    pub class: ModeClass,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareRow {
    pub class: ModeClass,
    pub plate_hz: f64,
    pub solid_hz: Option<f64>,
    /// `|plate − solid| / solid`.
    pub rel_error: Option<f64>,
    /// Macro mode whose error is above the tolerance.
    pub exceeds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareReport {
    pub rows: Vec<CompareRow>,
    pub warning: Option<String>,
}

/// Collapses frequencies that agree to `1e-6` relative.
fn distinct<T: Copy>(items: &mut Vec<(f64, T)>) {
    items.sort_by(|a, b| a.0.total_cmp(&b.0));
    items.dedup_by(|b, a| (a.0 - b.0).abs() <= 1e-6 * a.0.abs().max(b.0.abs()));
}

/// Pairs each distinct plate frequency with a distinct 3D frequency.
///
/// Degenerate pairs count once on both sides. Pairs are formed greedily by
/// smallest relative error, each 3D value used at most once, and reported
/// in ascending plate order. Unequal counts leave rows unmatched and set a
/// warning.
pub fn compare_spectra(plate: &[PlateMode], solid: &[f64], tolerance: f64) -> CompareReport {
    let mut p: Vec<(f64, ModeClass)> = plate.iter().map(|m| (m.freq_hz, m.class)).collect();
    let mut s: Vec<(f64, ())> = solid.iter().map(|&f| (f, ())).collect();
    distinct(&mut p);
    distinct(&mut s);

    let rel = |a: f64, b: f64| {
        if a == b {
            0.0
        } else {
            (a - b).abs() / b.abs()
        }
    };
    let mut cand: Vec<(f64, usize, usize)> = Vec::with_capacity(p.len() * s.len());
    for (i, &(fp, _)) in p.iter().enumerate() {
        for (j, &(fs, _)) in s.iter().enumerate() {
            cand.push((rel(fp, fs), i, j));
        }
    }
    cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut pair: Vec<Option<usize>> = vec![None; p.len()];
    let mut used = vec![false; s.len()];
    for (_, i, j) in cand {
        if pair[i].is_none() && !used[j] {
            pair[i] = Some(j);
            used[j] = true;
        }
    }

    let rows = p
        .iter()
        .zip(&pair)
        .map(|(&(fp, class), j)| {
            let solid_hz = j.map(|j| s[j].0);
            let rel_error = solid_hz.map(|fs| rel(fp, fs));
            CompareRow {
                class,
                plate_hz: fp,
                solid_hz,
                rel_error,
                exceeds: class.is_macro() && rel_error.is_some_and(|e| e > tolerance),
            }
        })
        .collect();
    let warning = (p.len() != s.len()).then(|| {
        format!(
            "mismatched mode counts: {} distinct plate frequencies, {} distinct 3D frequencies; {} pairs reported",
            p.len(),
            s.len(),
            p.len().min(s.len())
        )
    });
    CompareReport { rows, warning }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ModeClass::*;

    fn reference_plate() -> Vec<PlateMode> {
        [
            (0.310, Flexural),
            (17.881, FlexuralTransverse),
            (501.13, MicroRotation),
            (205.62, MicroRotation),
            (338.95, MicroRotationTransverse),
        ]
        .iter()
        .map(|&(freq_hz, class)| PlateMode { freq_hz, class })
        .collect()
    }

    #[test]
    fn reference_pairs_give_reference_errors() {
        let rep = compare_spectra(&reference_plate(), &[0.309, 17.763, 530.82, 211.98, 317.87], 0.01);
        assert!(rep.warning.is_none());
        let errs: Vec<f64> = rep.rows.iter().map(|r| r.rel_error.unwrap()).collect();
        // Ascending plate order: 0.310, 17.881, 205.62, 338.95, 501.13.
        let want = [0.0032, 0.0066, 0.030, 0.066, 0.056];
        for (e, w) in errs.iter().zip(want) {
            assert!((e - w).abs() < 5e-4, "{e} vs {w}");
        }
        assert!(rep.rows.iter().all(|r| !r.exceeds));
    }

    #[test]
    fn tight_threshold_flags_macro_only() {
        let rep = compare_spectra(&reference_plate(), &[0.309, 17.763, 530.82, 211.98, 317.87], 0.001);
        let flagged: Vec<ModeClass> = rep.rows.iter().filter(|r| r.exceeds).map(|r| r.class).collect();
        assert_eq!(flagged, vec![Flexural, FlexuralTransverse]);
    }

    #[test]
    fn identical_spectra_have_zero_error() {
        let plate = reference_plate();
        let solid: Vec<f64> = plate.iter().map(|m| m.freq_hz).collect();
        let rep = compare_spectra(&plate, &solid, 1e-12);
        assert!(rep.rows.iter().all(|r| r.rel_error == Some(0.0) && !r.exceeds));
    }

    #[test]
    fn degenerate_pairs_count_once() {
        let plate: Vec<PlateMode> = [1.0, 1.0, 2.0, 2.0]
            .iter()
            .map(|&freq_hz| PlateMode { freq_hz, class: Flexural })
            .collect();
        let rep = compare_spectra(&plate, &[1.0, 2.0], 0.01);
        assert_eq!(rep.rows.len(), 2);
        assert!(rep.warning.is_none());
    }

    #[test]
    fn short_solid_list_is_partial() {
        let rep = compare_spectra(&reference_plate(), &[0.309, 17.763], 0.01);
        assert!(rep.warning.is_some());
        assert_eq!(rep.rows.iter().filter(|r| r.solid_hz.is_some()).count(), 2);
        assert_eq!(rep.rows.len(), 5);
    }
}
