use serde::{Deserialize, Serialize};

use super::{CurveConfig, InvolutionAction};
use crate::{Error, Result};

/// Where the fixed points of the involution lie relative to the curves.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointData {
    /// Curves passing through a fixed point. Must be empty here.
    #[serde(default)]
    pub curves_through_fixed_points: Vec<String>,
}

/// The quotient configuration together with the orbit behind each curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub config: CurveConfig,
    pub orbits: Vec<(String, String)>,
}

/// Images of the curves under the quotient map by a free involution.
///
/// Every curve must be moved by `act` and avoid the fixed points; an orbit
/// `{R, iR}` becomes one curve with `2 (C.C') = (R + iR).(R' + iR')`.
/// Output curves follow the orbits ordered by their first member and are
/// labelled `"R+iR"`.
pub fn quotient_by_involution(
    config: &CurveConfig,
    act: &InvolutionAction,
    fixed: &FixedPointData,
) -> Result<Quotient> {
    act.check_isometry(config)?;
    if let Some(c) = fixed.curves_through_fixed_points.first() {
        return Err(Error::InvalidConfig(format!(
            "`{c}` passes through a fixed point; ramified quotients are not supported"
        )));
    }
    let orbits = act.orbits();
    if let Some(&(i, _)) = orbits.iter().find(|(i, j)| i == j) {
        return Err(Error::InvalidConfig(format!(
            "`{}` is mapped to itself; ramified quotients are not supported",
            config.labels()[i]
        )));
    }
    let n = orbits.len();
    let mut gram = vec![vec![0; n]; n];
    for (a, &(r1, r2)) in orbits.iter().enumerate() {
        for (b, &(s1, s2)) in orbits.iter().enumerate() {
            let total = config.entry(r1, s1)
                + config.entry(r1, s2)
                + config.entry(r2, s1)
                + config.entry(r2, s2);
            if total % 2 != 0 {
                return Err(Error::InvalidConfig(format!(
                    "orbit sums of `{}` and `{}` pair to the odd number {total}",
                    config.labels()[r1],
                    config.labels()[s1]
                )));
            }
            gram[a][b] = total / 2;
        }
    }
    let labels = config.labels();
    let labels_out = orbits
        .iter()
        .map(|&(i, j)| format!("{}+{}", labels[i], labels[j]))
        .collect();
    Ok(Quotient {
        config: CurveConfig::from_gram(labels_out, &gram)?,
        orbits: orbits
            .iter()
            .map(|&(i, j)| (labels[i].clone(), labels[j].clone()))
            .collect(),
    })
}
