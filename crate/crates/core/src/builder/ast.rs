use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    Cyclic(u32),
    Symmetric(u32),
    Alternating(u32),
    Dihedral(u32),
    Klein,
    Psl2(u32),
    Pgl2(u32),
}

/// How `C2^{t-1}` and `S3` act on `K = C2²` in the third example family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Ex3Action {
    /// Every factor acts through one transposition: `S3` by its sign, each
    /// extra `C2` as the transposition.
    #[default]
    Transposition,
    /// `S3` as in `S4`, the extra `C2` factors trivially: `S4 × C2^{t-1}`.
    Trivial,
    /// No factor acts: `S3 × C2^{t+1}`.
    None,
    /// `S3` as in `S4` and each extra `C2` as a transposition. Not a
    /// homomorphism once an extra `C2` exists.
    Literal,
}

impl Ex3Action {
    pub fn name(self) -> &'static str {
        match self {
            Ex3Action::Transposition => "transposition",
            Ex3Action::Trivial => "trivial",
            Ex3Action::None => "none",
            Ex3Action::Literal => "literal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            Ex3Action::Transposition,
            Ex3Action::Trivial,
            Ex3Action::None,
            Ex3Action::Literal,
        ]
        .into_iter()
        .find(|a| a.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `S3 × C2^t`.
    Ex1,
    /// `S4`.
    Ex2a,
    /// `(C3^t ⋊ C2) × C2`, the `C2` inverting every `C3`.
    Ex2b,
    /// `K ⋊ (S3 × C2^{t-1})` with `K = C2²`.
    Ex3(Ex3Action),
    /// `⟨PSL2(7)^n, γ⟩` inside `PGL2(7) ≀ C_n`, `n = 2^t`.
    Wreath,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Ex1 => "EX1",
            Family::Ex2a => "EX2A",
            Family::Ex2b => "EX2B",
            Family::Ex3(_) => "EX3",
            Family::Wreath => "WREATH",
        }
    }
}

/// One factor of a word: a generator power, a cycle literal (0-based
/// points) or a parenthesised word, each raised to a power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Letter {
    Gen { index: usize, power: i64 },
    Cycles { cycles: Vec<Vec<usize>>, power: i64 },
    Group { word: Word, power: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<Letter>);

/// For each listed generator of the acting group (0-based), the images of
/// the normal part's generators. Unlisted generators act trivially.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ActionMap {
    pub images: Vec<(usize, Vec<Word>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Atom(Atom),
    DirectProduct(Vec<GroupExpr>),
    WreathCyclic(Box<GroupExpr>, usize),
    Semidirect(Box<GroupExpr>, Box<GroupExpr>, ActionMap),
    Quotient(Box<GroupExpr>, Vec<Word>),
    Subgroup(Box<GroupExpr>, Vec<Word>),
    CrownPower(Box<GroupExpr>, usize),
    Family(Family, u32),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cyclic(n) => write!(f, "C{n}"),
            Atom::Symmetric(n) => write!(f, "S{n}"),
            Atom::Alternating(n) => write!(f, "A{n}"),
            Atom::Dihedral(n) => write!(f, "Dih{n}"),
            Atom::Klein => write!(f, "K4"),
            Atom::Psl2(q) => write!(f, "PSL2({q})"),
            Atom::Pgl2(q) => write!(f, "PGL2({q})"),
        }
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, power: i64) -> fmt::Result {
    if power != 1 {
        write!(f, "^{power}")?;
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        for (i, letter) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match letter {
                Letter::Gen { index, power } => {
                    write!(f, "g{}", index + 1)?;
                    write_power(f, *power)?;
                }
                Letter::Cycles { cycles, power } => {
                    if *power != 1 {
                        write!(f, "(")?;
                    }
                    for c in cycles {
                        let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                        write!(f, "({})", pts.join(","))?;
                    }
                    if *power != 1 {
                        write!(f, ")^{power}")?;
                    }
                }
                Letter::Group { word, power } => {
                    write!(f, "({word})")?;
                    write_power(f, *power)?;
                }
            }
        }
        Ok(())
    }
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Atom(a) => write!(f, "{a}"),
            GroupExpr::DirectProduct(xs) => write!(f, "D({})", join(xs, ", ")),
            GroupExpr::WreathCyclic(x, n) => write!(f, "W({x}, {n})"),
            GroupExpr::Semidirect(n, h, action) => {
                write!(f, "SD({n}, {h}, [")?;
                for (i, (g, images)) in action.images.iter().enumerate() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "g{} -> [{}]", g + 1, join(images, ", "))?;
                }
                write!(f, "])")
            }
            GroupExpr::Quotient(x, ws) => write!(f, "Q({x}; {})", join(ws, ", ")),
            GroupExpr::Subgroup(x, ws) => write!(f, "SUB({x}; {})", join(ws, ", ")),
            GroupExpr::CrownPower(x, k) => write!(f, "CROWN({x}, {k})"),
            GroupExpr::Family(Family::Ex3(action), t) if *action != Ex3Action::default() => {
                write!(f, "EX3({t}, {})", action.name())
            }
            GroupExpr::Family(Family::Ex2a, 1) => write!(f, "EX2A"),
            GroupExpr::Family(fam, t) => write!(f, "{}({t})", fam.name()),
        }
    }
}
