use std::fmt;

/// A permutation of the four vertices of a tetrahedron, stored by images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);

    /// Builds a permutation from its images, or `None` if they are not a
    /// permutation of `{0,1,2,3}`.
    pub fn new(images: [u8; 4]) -> Option<Self> {
        let mut seen = 0u8;
        for &i in &images {
            if i > 3 || seen & (1 << i) != 0 {
                return None;
            }
            seen |= 1 << i;
        }
        Some(Perm4(images))
    }

    /// Permutation built from images that are known to be valid.
    ///
    /// Panics on invalid input; intended for constants and internal builders.
    pub fn from_images(images: [u8; 4]) -> Self {
        Self::new(images).expect("invalid Perm4 images")
    }

    /// Permutation sending `a` to the listed images in order, i.e. `from` is
    /// mapped pointwise onto `to`.
    pub fn mapping(from: [usize; 4], to: [usize; 4]) -> Self {
        let mut images = [0u8; 4];
        for k in 0..4 {
            images[from[k]] = to[k] as u8;
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn apply(self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(self) -> Self {
        let mut inv = [0u8; 4];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Perm4) -> Self {
        let mut out = [0u8; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0[other.0[i] as usize];
        }
        Perm4(out)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(self) -> i8 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}
