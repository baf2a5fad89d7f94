//! The 3D scene: z-parallel rectangles and ε-cylinders with exact
//! rational coordinates. Integers serialize as JSON numbers, other values
//! as `"p/q"` strings.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};

pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub mod qser {
    use super::Q;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        if v.is_integer() {
            s.serialize_i64(*v.numer())
        } else {
            s.serialize_str(&format!("{}/{}", v.numer(), v.denom()))
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Text(String),
    }

    pub fn parse(text: &str) -> Option<Q> {
        let text = text.trim();
        match text.split_once('/') {
            Some((n, d)) => {
                let d: i64 = d.trim().parse().ok()?;
                (d != 0).then_some(())?;
                Some(Q::new(n.trim().parse().ok()?, d))
            }
            None => Some(Q::from_integer(text.parse().ok()?)),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Q::from_integer(n)),
            Raw::Text(t) => {
                parse(&t).ok_or_else(|| D::Error::custom(format!("bad rational {t:?}")))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Rect {
    pub v: VertexId,
    pub z: i64,
    #[serde(with = "qser")]
    pub x_l: Q,
    #[serde(with = "qser")]
    pub x_r: Q,
    #[serde(with = "qser")]
    pub y_bot: Q,
    #[serde(with = "qser")]
    pub y_top: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Cylinder {
    pub edge: EdgeId,
    #[serde(with = "qser")]
    pub x: Q,
    #[serde(with = "qser")]
    pub y: Q,
    pub z_low: i64,
    pub z_high: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZprScene {
    #[serde(with = "qser")]
    pub epsilon: Q,
    pub rects: Vec<Rect>,
    pub cylinders: Vec<Cylinder>,
}

impl ZprScene {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let scene: ZprScene = serde_json::from_str(s).map_err(|e| Error::Scene(e.to_string()))?;
        scene.check_shape()?;
        Ok(scene)
    }

    fn check_shape(&self) -> Result<()> {
        if self.epsilon <= q(0) {
            return Err(Error::Scene("epsilon must be positive".into()));
        }
        for r in &self.rects {
            if r.x_l >= r.x_r || r.y_bot >= r.y_top {
                return Err(Error::Scene(format!("rectangle of {} is degenerate", r.v)));
            }
        }
        for c in &self.cylinders {
            if c.z_low >= c.z_high {
                return Err(Error::Scene(format!(
                    "cylinder of edge {} is degenerate",
                    c.edge
                )));
            }
        }
        Ok(())
    }

    pub fn rect(&self, v: VertexId) -> Option<&Rect> {
        self.rects.iter().find(|r| r.v == v)
    }

    pub fn cylinder(&self, e: EdgeId) -> Option<&Cylinder> {
        self.cylinders.iter().find(|c| c.edge == e)
    }
}
