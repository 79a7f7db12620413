//! The symplectic space (H, μ), ω₀, the cyclic-invariant algebra a_g(k) with
//! its spider basis, and symplectic derivations of the free Lie algebra.

mod hbasis;
mod spider;
mod symp_der;

pub use hbasis::{h_basis, omega0_lie};
pub use spider::{a_basis, bracket_spider, burnside_count, add_spider, spider_coordinates, spider_to_tensor, Spider, SpiderComb};
pub use symp_der::{sp_action, sp_basis, SympDerivation};


use crate::derivations::{apply_assoc, AssocDerivation};
use crate::free_algebra::{Letter, TensorElement, Word};
use crate::ring::Coeff;
use crate::{Error, Result};

/// A signed color: `c > 0` stands for `a_c`, `c < 0` for `b_{-c}`.
pub type SignedColor = i64;

/// Letter code of a color in the alphabet of rank `2g`: `a_i ↦ 2i−1`,
/// `b_i ↦ 2i`. This makes `1 < −1 < 2 < −2 < …` the letter order.
pub fn letter_of(c: SignedColor) -> Letter {
    if c > 0 {
        (2 * c - 1) as Letter
    } else {
        (-2 * c) as Letter
    }
}

pub fn color_of(x: Letter) -> SignedColor {
    let x = x as i64;
    if x % 2 == 1 {
        (x + 1) / 2
    } else {
        -x / 2
    }
}

/// The color paired with the letter under μ (`a_i ↔ b_i`).
pub(crate) fn partner_letter(x: Letter) -> Letter {
    if x % 2 == 1 {
        x + 1
    } else {
        x - 1
    }
}

/// `μ(c, d)`: 1 for `(a_i, b_i)`, −1 for `(b_i, a_i)`, 0 otherwise.
pub fn pairing(c: SignedColor, d: SignedColor) -> i64 {
    if c == -d && c != 0 {
        c.signum()
    } else {
        0
    }
}

/// The symplectic form on `H_Q` of genus `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    pub genus: usize,
}

impl SymplecticForm {
    pub fn new(genus: usize) -> Result<Self> {
        if genus < 1 {
            return Err(Error::InvalidParameter("genus must be at least 1".into()));
        }
        Ok(SymplecticForm { genus })
    }

    pub fn check(&self, c: SignedColor) -> Result<()> {
        if c == 0 || c.unsigned_abs() as usize > self.genus {
            return Err(Error::ColorOutOfRange { color: c, genus: self.genus });
        }
        Ok(())
    }

    /// μ on letter codes.
    pub fn mu(&self, x: Letter, y: Letter) -> i64 {
        pairing(color_of(x), color_of(y))
    }
}

/// `ω₀ = Σ (a_i ⊗ b_i − b_i ⊗ a_i)`.
pub fn omega0<R: Coeff>(g: usize) -> Result<TensorElement<R>> {
    SymplecticForm::new(g)?;
    Ok(TensorElement::from_terms((1..=g as i64).flat_map(|i| {
        let (a, b) = (letter_of(i), letter_of(-i));
        [(Word::new(&[a, b]), R::one()), (Word::new(&[b, a]), -R::one())]
    })))
}

/// True iff `D(ω₀) = 0`.
pub fn is_symplectic<R: Coeff>(d: &AssocDerivation<R>, g: usize) -> Result<bool> {
    if d.rank() != 2 * g {
        return Err(Error::RankMismatch { left: d.rank(), right: 2 * g });
    }
    Ok(apply_assoc(d, &omega0::<R>(g)?)?.is_zero())
}

/// Weight of a single word over the signed alphabet: `#a_i − #b_i` per index.
pub fn word_weight(letters: &[Letter], g: usize) -> Vec<i32> {
    let mut w = vec![0; g];
    for &x in letters {
        let c = color_of(x);
        w[c.unsigned_abs() as usize - 1] += c.signum() as i32;
    }
    w
}

