use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::symplectic::Letter;

/// A Pauli letter with a sign; `neg` means `-letter`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedLetter {
    pub neg: bool,
    pub letter: Letter,
}

impl SignedLetter {
    pub const fn pos(letter: Letter) -> Self {
        Self { neg: false, letter }
    }

    pub const fn neg(letter: Letter) -> Self {
        Self { neg: true, letter }
    }
}

impl fmt::Display for SignedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.neg { '-' } else { '+' }, self.letter)
    }
}

/// Generator used to spell frames as gate sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameGate {
    H,
    S,
}

/// Element of the 24-element single-qubit Clifford group, modulo phase.
///
/// Identified by the images `C X C†` and `C Z C†`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalFrame(u8);

struct Tables {
    images: Vec<(SignedLetter, SignedLetter)>,
    index: HashMap<(SignedLetter, SignedLetter), u8>,
    compose: Vec<[u8; 24]>,
    inverse: Vec<u8>,
    words: Vec<Vec<FrameGate>>,
}

/// `i · P · Q` for distinct non-identity letters, as a signed letter.
fn i_times_product(p: SignedLetter, q: SignedLetter) -> SignedLetter {
    use Letter::*;
    let (r, cyclic) = match (p.letter, q.letter) {
        (X, Y) => (Z, true),
        (Y, Z) => (X, true),
        (Z, X) => (Y, true),
        (Y, X) => (Z, false),
        (Z, Y) => (X, false),
        (X, Z) => (Y, false),
        _ => unreachable!("images of X and Z must anticommute"),
    };
    // i · (±i R) = ∓R
    SignedLetter {
        neg: p.neg ^ q.neg ^ cyclic,
        letter: r,
    }
}

fn act(img: (SignedLetter, SignedLetter), s: SignedLetter) -> SignedLetter {
    let base = match s.letter {
        Letter::I => SignedLetter::pos(Letter::I),
        Letter::X => img.0,
        Letter::Z => img.1,
        Letter::Y => i_times_product(img.0, img.1),
    };
    SignedLetter {
        neg: base.neg ^ s.neg,
        letter: base.letter,
    }
}

fn gate_images(g: FrameGate) -> (SignedLetter, SignedLetter) {
    match g {
        FrameGate::H => (SignedLetter::pos(Letter::Z), SignedLetter::pos(Letter::X)),
        FrameGate::S => (SignedLetter::pos(Letter::Y), SignedLetter::pos(Letter::Z)),
    }
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let id = (SignedLetter::pos(Letter::X), SignedLetter::pos(Letter::Z));
        let mut images = vec![id];
        let mut words = vec![Vec::new()];
        let mut index = HashMap::from([(id, 0u8)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in [FrameGate::H, FrameGate::S] {
                let gi = gate_images(g);
                let img = (act(gi, images[e].0), act(gi, images[e].1));
                if !index.contains_key(&img) {
                    index.insert(img, images.len() as u8);
                    let mut w = words[e].clone();
                    w.push(g);
                    images.push(img);
                    words.push(w);
                    queue.push_back(images.len() - 1);
                }
            }
        }
        assert_eq!(images.len(), 24);
        let compose = (0..24)
            .map(|a| {
                let mut row = [0u8; 24];
                for (b, slot) in row.iter_mut().enumerate() {
                    let img = (act(images[a], images[b].0), act(images[a], images[b].1));
                    *slot = index[&img];
                }
                row
            })
            .collect::<Vec<_>>();
        let inverse = (0..24)
            .map(|a| (0..24u8).find(|&b| compose[a][b as usize] == 0).unwrap())
            .collect();
        Tables {
            images,
            index,
            compose,
            inverse,
            words,
        }
    })
}

impl LocalFrame {
    pub const IDENTITY: LocalFrame = LocalFrame(0);

    /// All 24 elements, identity first.
    pub fn all() -> impl Iterator<Item = LocalFrame> {
        (0..24).map(LocalFrame)
    }

    pub fn from_images(x: SignedLetter, z: SignedLetter) -> Option<LocalFrame> {
        tables().index.get(&(x, z)).map(|&i| LocalFrame(i))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Option<LocalFrame> {
        (i < 24).then_some(LocalFrame(i as u8))
    }

    pub fn h() -> Self {
        Self::from_gate(FrameGate::H)
    }

    pub fn s() -> Self {
        Self::from_gate(FrameGate::S)
    }

    pub fn sdg() -> Self {
        Self::s().inverse()
    }

    fn from_gate(g: FrameGate) -> Self {
        let (x, z) = gate_images(g);
        Self::from_images(x, z).unwrap()
    }

    /// The Pauli operator `letter` viewed as a Clifford.
    pub fn pauli(letter: Letter) -> Self {
        let (xneg, zneg) = match letter {
            Letter::I => (false, false),
            Letter::X => (false, true),
            Letter::Z => (true, false),
            Letter::Y => (true, true),
        };
        Self::from_images(
            SignedLetter {
                neg: xneg,
                letter: Letter::X,
            },
            SignedLetter {
                neg: zneg,
                letter: Letter::Z,
            },
        )
        .unwrap()
    }

    /// `exp(iπ/4 · letter)` up to phase: the square root of `i·letter`.
    pub fn sqrt_i(letter: SignedLetter) -> Self {
        Self::all()
            .find(|f| {
                f.conjugate(letter) == letter
                    && f.compose(*f) == Self::pauli(letter.letter)
                    && Self::all_letters().iter().all(|&l| {
                        // exp(iθP) L exp(-iθP) = i P L for anticommuting L at θ = π/4
                        l == letter.letter
                            || f.conjugate(SignedLetter::pos(l))
                                == i_times_product(letter, SignedLetter::pos(l))
                    })
            })
            .expect("square root exists")
    }

    fn all_letters() -> [Letter; 3] {
        [Letter::X, Letter::Y, Letter::Z]
    }

    pub fn x_image(self) -> SignedLetter {
        tables().images[self.index()].0
    }

    pub fn z_image(self) -> SignedLetter {
        tables().images[self.index()].1
    }

    /// `C · s · C†`.
    pub fn conjugate(self, s: SignedLetter) -> SignedLetter {
        act(tables().images[self.index()], s)
    }

    /// `C† · s · C`.
    pub fn conjugate_inverse(self, s: SignedLetter) -> SignedLetter {
        self.inverse().conjugate(s)
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(self, other: LocalFrame) -> LocalFrame {
        LocalFrame(tables().compose[self.index()][other.index()])
    }

    pub fn inverse(self) -> LocalFrame {
        LocalFrame(tables().inverse[self.index()])
    }

    /// True for the four Pauli elements.
    pub fn is_pauli(self) -> bool {
        self.x_image().letter == Letter::X && self.z_image().letter == Letter::Z
    }

    /// The Pauli letter of a Pauli element.
    pub fn as_pauli(self) -> Option<Letter> {
        self.is_pauli()
            .then(|| match (self.z_image().neg, self.x_image().neg) {
                (false, false) => Letter::I,
                (true, false) => Letter::X,
                (false, true) => Letter::Z,
                (true, true) => Letter::Y,
            })
    }

    /// Shortest `H`/`S` word realizing this frame, in application order.
    pub fn gate_word(self) -> &'static [FrameGate] {
        &tables().words[self.index()]
    }
}

impl fmt::Display for LocalFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_pauli() {
            Some(l) => write!(f, "{l}"),
            None => write!(f, "[X->{}, Z->{}]", self.x_image(), self.z_image()),
        }
    }
}

impl fmt::Debug for LocalFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalFrame({self})")
    }
}
