use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Menger–Urysohn order of a point: the number of components of its
/// complement. `Finite(1)` is an end, `Finite(2)` a regular point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderLabel {
    Finite(u32),
    Infinite,
}

impl OrderLabel {
    pub const END: OrderLabel = OrderLabel::Finite(1);
    pub const REGULAR: OrderLabel = OrderLabel::Finite(2);

    pub fn finite(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLabel("0".into()));
        }
        Ok(OrderLabel::Finite(n))
    }

    pub fn is_end(self) -> bool {
        self == Self::END
    }

    pub fn is_branch(self) -> bool {
        self > Self::REGULAR
    }

    /// Whether a point of this order can have `degree` distinct directions.
    pub fn admits_degree(self, degree: usize) -> bool {
        match self {
            OrderLabel::Finite(n) => degree <= n as usize,
            OrderLabel::Infinite => true,
        }
    }

    /// The token used in codes, flags and files.
    pub fn token(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for OrderLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderLabel::Finite(n) => write!(f, "{n}"),
            OrderLabel::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for OrderLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            return Ok(OrderLabel::Infinite);
        }
        let n: u32 = s.parse().map_err(|_| Error::InvalidLabel(s.to_string()))?;
        OrderLabel::finite(n).map_err(|_| Error::InvalidLabel(s.to_string()))
    }
}

impl Serialize for OrderLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OrderLabel::Finite(n) => serializer.serialize_u32(*n),
            OrderLabel::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for OrderLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct LabelVisitor;

        impl Visitor<'_> for LabelVisitor {
            type Value = OrderLabel;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<OrderLabel, E> {
                let n = u32::try_from(v).map_err(|_| E::custom("label out of range"))?;
                OrderLabel::finite(n).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<OrderLabel, E> {
                let v = u64::try_from(v).map_err(|_| E::custom("negative label"))?;
                self.visit_u64(v)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<OrderLabel, E> {
                if v == "inf" {
                    Ok(OrderLabel::Infinite)
                } else {
                    Err(E::custom(format!("unknown label token `{v}`")))
                }
            }
        }

        deserializer.deserialize_any(LabelVisitor)
    }
}

/// A finite nonempty set of branch orders, each at least 3.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    orders: BTreeSet<OrderLabel>,
}

impl Signature {
    pub fn new(orders: impl IntoIterator<Item = OrderLabel>) -> Result<Self> {
        let orders: BTreeSet<_> = orders.into_iter().collect();
        if orders.is_empty() {
            return Err(Error::InvalidSignature("empty signature".into()));
        }
        if let Some(bad) = orders.iter().find(|l| !l.is_branch()) {
            return Err(Error::InvalidSignature(format!("branch order {bad} is below 3")));
        }
        Ok(Signature { orders })
    }

    /// Parses a comma separated list such as `3,4,inf`.
    pub fn parse(s: &str) -> Result<Self> {
        let labels = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(OrderLabel::from_str)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::InvalidSignature(e.to_string()))?;
        Signature::new(labels)
    }

    pub fn branch_orders(&self) -> impl Iterator<Item = OrderLabel> + '_ {
        self.orders.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn contains(&self, label: OrderLabel) -> bool {
        self.orders.contains(&label)
    }

    pub fn min_branch(&self) -> OrderLabel {
        *self.orders.iter().next().expect("signature is nonempty")
    }

    /// Labels a point of the dendrite can carry: {1, 2} ∪ S.
    pub fn allows(&self, label: OrderLabel) -> bool {
        label == OrderLabel::END || label == OrderLabel::REGULAR || self.contains(label)
    }

    /// {1, 2} ∪ S in increasing order.
    pub fn point_labels(&self) -> Vec<OrderLabel> {
        let mut out = vec![OrderLabel::END, OrderLabel::REGULAR];
        out.extend(self.branch_orders());
        out
    }

    /// Labels of points that may sit inside an arc: {2} ∪ S.
    pub fn insertable_labels(&self) -> Vec<OrderLabel> {
        let mut out = vec![OrderLabel::REGULAR];
        out.extend(self.branch_orders());
        out
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.orders.is_subset(&other.orders)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self.orders.iter().map(|l| l.to_string()).collect();
        f.write_str(&tokens.join(","))
    }
}

impl FromStr for Signature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Signature::parse(s)
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.orders.iter())
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let labels = Vec::<OrderLabel>::deserialize(deserializer)?;
        Signature::new(labels).map_err(de::Error::custom)
    }
}
