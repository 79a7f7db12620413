//! The free abelian group H_n, the tensor algebra T(H_n) without constant
//! terms, and the free Lie algebra L_n in its Lyndon basis.

mod lie;
mod lyndon;
mod tensor;

pub use lie::{lie_bracket, lie_to_tensor, tensor_to_lie, LieElement};
pub use lyndon::{is_lyndon, lyndon_basis, lyndon_words_up_to, witt, LyndonWord};
pub use tensor::TensorElement;

use smallvec::SmallVec;

/// A generator index, 1-based.
pub type Letter = u8;

/// A nonempty word over the alphabet `1..=n`, compared lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub SmallVec<[Letter; 14]>);

impl Word {
    pub fn new(letters: &[Letter]) -> Self {
        Word(SmallVec::from_slice(letters))
    }

    pub fn letter(x: Letter) -> Self {
        Word::new(&[x])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn max_letter(&self) -> Letter {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Checks that every letter lies in `1..=rank`.
    pub fn check_rank(&self, rank: usize) -> crate::Result<()> {
        if let Some(&x) = self.0.iter().find(|&&x| x == 0 || x as usize > rank) {
            return Err(crate::Error::LetterOutOfRange { letter: x as usize, rank });
        }
        Ok(())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(SmallVec::from_vec(v))
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word::new(v)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "x{x}")?;
        }
        Ok(())
    }
}

/// All words of length `k` over `1..=n`, in lexicographic order.
pub fn all_words(n: usize, k: usize) -> Vec<Word> {
    let mut out = Vec::with_capacity(n.pow(k as u32));
    let mut cur = vec![1 as Letter; k];
    if k == 0 {
        return out;
    }
    loop {
        out.push(Word::new(&cur));
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (cur[i] as usize) < n {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = 1;
                }
                break;
            }
        }
    }
}
