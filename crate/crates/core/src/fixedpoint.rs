//! Approximate fixed points of maps of the simplex into itself by labeling
//! ever finer edgewise subdivisions from the map and taking the barycenter of
//! a completely labeled cell.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::BPoint;
use crate::labeling::{labeling_from_map, validate_labeling};
use crate::rational::Rational;
use crate::sperner::find_completely_labeled;
use crate::subdivision::edgewise_subdivision;

/// An exact map of the simplex into itself.
pub trait SimplexMap: Send + Sync {
    fn name(&self) -> &str;

    /// Raw image coordinates; checked to lie on the simplex by [`apply`].
    fn eval(&self, x: &BPoint) -> Vec<Rational>;
}

/// Evaluates `map` and rejects images off the simplex.
pub fn apply(map: &dyn SimplexMap, x: &BPoint) -> Result<BPoint> {
    let image = map.eval(x);
    if image.len() != x.dim() {
        return Err(Error::MapOffSimplex {
            name: map.name().to_string(),
            detail: format!(
                "image has {} coordinates, expected {}",
                image.len(),
                x.dim()
            ),
        });
    }
    BPoint::new(image).map_err(|e| Error::MapOffSimplex {
        name: map.name().to_string(),
        detail: e.to_string(),
    })
}

pub struct Identity;

impl SimplexMap for Identity {
    fn name(&self) -> &str {
        "identity"
    }

    fn eval(&self, x: &BPoint) -> Vec<Rational> {
        x.coords().to_vec()
    }
}

/// Cyclic shift `(x_1, ..., x_n) ↦ (x_n, x_1, ..., x_{n-1})`; the centroid is
/// its only fixed point.
pub struct Rotate;

impl SimplexMap for Rotate {
    fn name(&self) -> &str {
        "rotate"
    }

    fn eval(&self, x: &BPoint) -> Vec<Rational> {
        let c = x.coords();
        let n = c.len();
        (0..n).map(|i| c[(i + n - 1) % n].clone()).collect()
    }
}

/// Constant map onto the corner `e_1`.
pub struct ConstE1;

impl SimplexMap for ConstE1 {
    fn name(&self) -> &str {
        "const-e1"
    }

    fn eval(&self, x: &BPoint) -> Vec<Rational> {
        BPoint::corner(x.dim(), 0).into_coords()
    }
}

pub struct MapRegistry {
    maps: Vec<Box<dyn SimplexMap>>,
}

impl MapRegistry {
    pub fn empty() -> Self {
        MapRegistry { maps: Vec::new() }
    }

    pub fn with_builtins() -> Self {
        let mut reg = MapRegistry::empty();
        reg.register(Box::new(Identity));
        reg.register(Box::new(Rotate));
        reg.register(Box::new(ConstE1));
        reg
    }

    pub fn register(&mut self, map: Box<dyn SimplexMap>) {
        self.maps.retain(|m| m.name() != map.name());
        self.maps.push(map);
    }

    pub fn get(&self, name: &str) -> Result<&dyn SimplexMap> {
        self.maps
            .iter()
            .find(|m| m.name() == name)
            .map(|m| m.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: "map",
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&str> {
        self.maps.iter().map(|m| m.name()).collect()
    }
}

impl Default for MapRegistry {
    fn default() -> Self {
        MapRegistry::with_builtins()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub m: usize,
    pub coords: BPoint,
    /// `max_i |f(x)_i - x_i|`
    pub residual: Rational,
}

pub type FPTrace = Vec<TraceStep>;

pub fn residual(map: &dyn SimplexMap, x: &BPoint) -> Result<Rational> {
    Ok(apply(map, x)?.max_dist(x))
}

pub fn approximate_fixed_point(
    map: &dyn SimplexMap,
    n: usize,
    schedule: &[usize],
) -> Result<FPTrace> {
    if schedule.is_empty() {
        return Err(Error::InvalidArgument("schedule must be nonempty".into()));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("schedule must be increasing".into()));
    }
    schedule
        .iter()
        .map(|&m| {
            let sub = edgewise_subdivision(n, m)?;
            let labeling = labeling_from_map(&sub, |x| apply(map, x))?;
            let report = validate_labeling(&sub, &labeling);
            if !report.passed {
                return Err(Error::InvalidLabeling(Box::new(report)));
            }
            let cl = find_completely_labeled(&sub, &labeling)?;
            let x = BPoint::barycenter(sub.cell_points(&cl.cells[0]))?;
            let residual = residual(map, &x)?;
            Ok(TraceStep {
                m,
                coords: x,
                residual,
            })
        })
        .collect()
}
