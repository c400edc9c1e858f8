use std::fmt;
use std::sync::Arc;

use super::{Category, CategoryError, MorphId};

/// A functor between two finite categories, given by its object and morphism maps.
#[derive(Clone, Debug)]
pub struct Functor {
    pub source: Arc<Category>,
    pub target: Arc<Category>,
    pub on_objects: Vec<usize>,
    pub on_morphisms: Vec<MorphId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctorViolation {
    Shape(String),
    /// The image of a morphism does not run between the images of its endpoints.
    Endpoints {
        morphism: MorphId,
    },
    Identity {
        object: usize,
    },
    /// `F(g . f) != F(g) . F(f)`.
    Composition {
        f: MorphId,
        g: MorphId,
    },
}

impl fmt::Display for FunctorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shape(msg) => write!(f, "{msg}"),
            Self::Endpoints { morphism } => {
                write!(f, "morphism {morphism} is sent between the wrong objects")
            }
            Self::Identity { object } => write!(f, "identity of object {object} is not preserved"),
            Self::Composition { f: a, g } => {
                write!(f, "composite of {a} then {g} is not preserved")
            }
        }
    }
}

/// Outcome of [`Functor::is_isomorphism`], naming the first obstruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoWitness {
    Isomorphism,
    ObjectsNotBijective,
    HomNotBijective {
        src: usize,
        dst: usize,
        source_size: usize,
        image_size: usize,
        target_size: usize,
    },
}

impl IsoWitness {
    pub fn holds(&self) -> bool {
        *self == IsoWitness::Isomorphism
    }
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Isomorphism => write!(f, "isomorphism"),
            Self::ObjectsNotBijective => write!(f, "not bijective on objects"),
            Self::HomNotBijective { src, dst, source_size, image_size, target_size } => write!(
                f,
                "hom({src}, {dst}) has {source_size} morphisms, image {image_size}, target hom-set {target_size}"
            ),
        }
    }
}

impl Functor {
    pub fn identity(category: &Arc<Category>) -> Functor {
        Functor {
            source: category.clone(),
            target: category.clone(),
            on_objects: (0..category.num_objects()).collect(),
            on_morphisms: (0..category.num_morphisms()).collect(),
        }
    }

    /// Exhaustive check of endpoints, identities and every composable pair.
    pub fn check(&self) -> Result<(), FunctorViolation> {
        let (s, t) = (&*self.source, &*self.target);
        if self.on_objects.len() != s.num_objects() || self.on_morphisms.len() != s.num_morphisms()
        {
            return Err(FunctorViolation::Shape(
                "map lengths do not match the source".into(),
            ));
        }
        if self.on_objects.iter().any(|&o| o >= t.num_objects())
            || self.on_morphisms.iter().any(|&m| m >= t.num_morphisms())
        {
            return Err(FunctorViolation::Shape("map leaves the target".into()));
        }
        for (f, m) in s.morphisms().iter().enumerate() {
            let image = t.morphism(self.on_morphisms[f]);
            if image.src != self.on_objects[m.src] || image.dst != self.on_objects[m.dst] {
                return Err(FunctorViolation::Endpoints { morphism: f });
            }
        }
        for object in 0..s.num_objects() {
            if self.on_morphisms[s.identity(object)] != t.identity(self.on_objects[object]) {
                return Err(FunctorViolation::Identity { object });
            }
        }
        for f in 0..s.num_morphisms() {
            for g in s.out_range(s.morphism(f).dst) {
                let lhs = self.on_morphisms[s.compose(g, f)];
                let rhs = t.compose(self.on_morphisms[g], self.on_morphisms[f]);
                if lhs != rhs {
                    return Err(FunctorViolation::Composition { f, g });
                }
            }
        }
        Ok(())
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let mut hit = vec![false; self.target.num_objects()];
        for &o in &self.on_objects {
            hit[o] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Every target hom-set between images is hit.
    pub fn is_full(&self) -> bool {
        let s = &*self.source;
        (0..s.num_objects()).all(|i| {
            (0..s.num_objects()).all(|j| {
                let target = self
                    .target
                    .hom_range(self.on_objects[i], self.on_objects[j]);
                let mut hit = vec![false; target.len()];
                for f in s.hom_range(i, j) {
                    hit[self.on_morphisms[f] - target.start] = true;
                }
                hit.into_iter().all(|h| h)
            })
        })
    }

    pub fn is_isomorphism(&self) -> IsoWitness {
        let s = &*self.source;
        let n = s.num_objects();
        if n != self.target.num_objects() || !self.is_surjective_on_objects() {
            return IsoWitness::ObjectsNotBijective;
        }
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (self.on_objects[i], self.on_objects[j]);
                let mut image: Vec<MorphId> =
                    s.hom_range(i, j).map(|f| self.on_morphisms[f]).collect();
                image.sort_unstable();
                image.dedup();
                let source_size = s.hom_range(i, j).len();
                let target_size = self.target.hom_range(a, b).len();
                if image.len() != source_size || source_size != target_size {
                    return IsoWitness::HomNotBijective {
                        src: i,
                        dst: j,
                        source_size,
                        image_size: image.len(),
                        target_size,
                    };
                }
            }
        }
        IsoWitness::Isomorphism
    }

    /// `other . self`.
    pub fn then(&self, other: &Functor) -> Functor {
        Functor {
            source: self.source.clone(),
            target: other.target.clone(),
            on_objects: self
                .on_objects
                .iter()
                .map(|&o| other.on_objects[o])
                .collect(),
            on_morphisms: self
                .on_morphisms
                .iter()
                .map(|&m| other.on_morphisms[m])
                .collect(),
        }
    }
}

/// The quotient from the trivial-link category to one with the designated
/// links on the same poset: identity on objects, `g` to its class.
pub fn quotient_functor(
    fine: &Arc<Category>,
    coarse: &Arc<Category>,
) -> Result<Functor, CategoryError> {
    if !Arc::ptr_eq(fine.group(), coarse.group()) {
        return Err(CategoryError::IncompatibleInputs(
            "categories are built over different groups".into(),
        ));
    }
    if fine.objects() != coarse.objects() {
        return Err(CategoryError::IncompatibleInputs(
            "object sets differ".into(),
        ));
    }
    let on_morphisms = fine
        .morphisms()
        .iter()
        .map(|m| {
            coarse.class_of(m.src, m.dst, m.rep).ok_or_else(|| {
                CategoryError::IncompatibleInputs(format!(
                    "element {} has no class in hom({}, {})",
                    m.rep, m.src, m.dst
                ))
            })
        })
        .collect::<Result<_, _>>()?;
    let functor = Functor {
        source: fine.clone(),
        target: coarse.clone(),
        on_objects: (0..fine.num_objects()).collect(),
        on_morphisms,
    };
    functor
        .check()
        .map_err(|v| CategoryError::AxiomsFailed(format!("quotient is not a functor: {v}")))?;
    Ok(functor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::build_category;
    use crate::lie::FlagPoset;

    #[test]
    fn quotient_of_gl22() {
        let flags = FlagPoset::new(2, 2).unwrap();
        let rbs = Arc::new(build_category(flags.gposet()).unwrap());
        let bs = Arc::new(build_category(&flags.gposet().with_trivial_links()).unwrap());
        let q = quotient_functor(&bs, &rbs).unwrap();
        assert!(q.is_full());
        assert!(q.is_surjective_on_objects());
        // The first obstruction is the Borel collapsing onto the identity class.
        assert_eq!(
            q.is_isomorphism(),
            IsoWitness::HomNotBijective {
                src: 0,
                dst: 0,
                source_size: 2,
                image_size: 1,
                target_size: 1
            }
        );
        assert_eq!((bs.hom(0, 3).len(), rbs.hom(0, 3).len()), (6, 3));
        // Each class over hom(line, empty) has exactly two preimages.
        let mut fibres = vec![0; rbs.num_morphisms()];
        for f in bs.hom_range(0, 3) {
            fibres[q.on_morphisms[f]] += 1;
        }
        assert!(rbs.hom_range(0, 3).all(|c| fibres[c] == 2));

        // Poset inclusions commute with the quotient.
        let poset = flags.gposet();
        for i in 0..poset.len() {
            for j in (0..poset.len()).filter(|&j| poset.leq(i, j)) {
                let e = crate::group::Elem::IDENTITY;
                assert_eq!(
                    q.on_morphisms[bs.class_of(i, j, e).unwrap()],
                    rbs.class_of(i, j, e).unwrap()
                );
            }
        }

        let trivial = Arc::new(build_category(&flags.gposet().with_trivial_links()).unwrap());
        assert!(quotient_functor(&bs, &trivial)
            .unwrap()
            .is_isomorphism()
            .holds());
        assert!(Functor::identity(&rbs).is_isomorphism().holds());
    }

    #[test]
    fn mismatched_inputs() {
        let a = FlagPoset::new(2, 2).unwrap();
        let b = FlagPoset::new(2, 3).unwrap();
        let ca = Arc::new(build_category(a.gposet()).unwrap());
        let cb = Arc::new(build_category(b.gposet()).unwrap());
        assert!(matches!(
            quotient_functor(&ca, &cb),
            Err(CategoryError::IncompatibleInputs(_))
        ));
    }

    #[test]
    fn broken_functor_is_named() {
        let flags = FlagPoset::new(2, 2).unwrap();
        let rbs = Arc::new(build_category(flags.gposet()).unwrap());
        let mut f = Functor::identity(&rbs);
        let endos: Vec<MorphId> = rbs.hom_range(3, 3).collect();
        f.on_morphisms[endos[1]] = endos[0];
        assert!(f.check().is_err());
    }
}
