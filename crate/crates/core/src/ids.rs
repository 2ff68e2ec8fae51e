//! Stable identifiers shared by the string set and its derived plane map.

use std::fmt;

macro_rules! id_type {
    ($(#[$m:meta])* $name:ident, $prefix:literal) => {
        $(#[$m])*
        #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub u32);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0 as usize
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!($prefix, "{}"), self.0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Debug::fmt(self, f)
            }
        }
    };
}

id_type!(
    /// A point of the universe. Never reused, survives every mutation.
    PointId,
    "p"
);
id_type!(
    /// A straight (or combinatorially atomic) piece of a string between two consecutive nodes.
    SegId,
    "g"
);
id_type!(
    /// A string. Substrings created by splitting get fresh ids.
    StringId,
    "s"
);
id_type!(
    /// A vertex of a derived plane map.
    VertexId,
    "v"
);
id_type!(
    /// An edge of a derived plane map.
    EdgeId,
    "e"
);
id_type!(
    /// A face of a derived plane map.
    FaceId,
    "f"
);

/// An oriented edge. Edge `e` owns darts `2e` (forward) and `2e + 1` (backward).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u32);

impl Dart {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    #[inline]
    pub fn edge(self) -> EdgeId {
        EdgeId(self.0 >> 1)
    }

    #[inline]
    pub fn is_forward(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub fn forward(e: EdgeId) -> Dart {
        Dart(e.0 << 1)
    }

    #[inline]
    pub fn backward(e: EdgeId) -> Dart {
        Dart((e.0 << 1) | 1)
    }
}

impl fmt::Debug for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}{}", self.0 >> 1, if self.is_forward() { "+" } else { "-" })
    }
}

/// Which endpoint of a segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    From,
    To,
}

/// A segment seen from one of its endpoints. Its left side is the region to the
/// left when walking along the segment away from that endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSeg {
    pub seg: SegId,
    pub end: End,
}

impl HalfSeg {
    pub fn new(seg: SegId, end: End) -> Self {
        HalfSeg { seg, end }
    }

    pub fn opposite(self) -> HalfSeg {
        HalfSeg {
            seg: self.seg,
            end: match self.end {
                End::From => End::To,
                End::To => End::From,
            },
        }
    }
}
