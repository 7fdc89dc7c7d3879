//! Homogeneous homomorphisms between presented modules.

use crate::linalg::LinMap;
use crate::skewalg::SkewPolynomial;

use super::{FreeVector, ModuleError, PieceMap, PresentedModule, Provenance};

/// `f: M -> N`, given by the images of the generators of `M` in `F0(N)`;
/// generator `e_i` of degree `d_i` goes to an element of degree `d_i + shift`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    source: PresentedModule,
    target: PresentedModule,
    images: Vec<FreeVector>,
    shift: i64,
}

impl ModuleMap {
    /// Validates degrees and that every source relation lands in the target
    /// relation submodule (checked by Gröbner normal form).
    pub fn new(
        source: PresentedModule,
        target: PresentedModule,
        images: Vec<FreeVector>,
        shift: i64,
    ) -> Result<ModuleMap, ModuleError> {
        if source.algebra() != target.algebra() {
            return Err(ModuleError::AlgebraMismatch);
        }
        if images.len() != source.rank() {
            return Err(ModuleError::MapImage {
                generator: images.len(),
                message: format!("expected {} images, found {}", source.rank(), images.len()),
            });
        }
        for (i, img) in images.iter().enumerate() {
            if img.len() != target.rank() {
                return Err(ModuleError::MapImage {
                    generator: i,
                    message: format!("image has {} components, target rank is {}", img.len(), target.rank()),
                });
            }
            let want = source.degrees()[i] + shift;
            for (t, p) in img.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                match p.homogeneous_degree() {
                    Some(dp) if dp as i64 + target.degrees()[t] == want => {}
                    _ => {
                        return Err(ModuleError::MapImage {
                            generator: i,
                            message: format!("component {} is not homogeneous of degree {}", t, want),
                        })
                    }
                }
            }
        }
        let map = ModuleMap { source, target, images, shift };
        let gb = map.target.relation_submodule().standard_groebner();
        for (j, r) in map.source.relations().iter().enumerate() {
            let v = map.apply_free(&r.entries);
            if !gb.reduces_to_zero(&v) {
                return Err(ModuleError::MapRelation { relation: j });
            }
        }
        Ok(map)
    }

    pub fn identity(m: &PresentedModule) -> ModuleMap {
        let alg = m.algebra();
        let images = (0..m.rank())
            .map(|i| (0..m.rank()).map(|t| if t == i { alg.one() } else { alg.zero() }).collect())
            .collect();
        ModuleMap { source: m.clone(), target: m.clone(), images, shift: 0 }
    }

    /// The canonical surjection `M -> N` when `N` has the same generators as
    /// `M` and at least its relations.
    pub fn canonical_projection(m: &PresentedModule, n: &PresentedModule) -> Result<ModuleMap, ModuleError> {
        let alg = m.algebra();
        let images = (0..m.rank())
            .map(|i| (0..n.rank()).map(|t| if t == i { alg.one() } else { alg.zero() }).collect())
            .collect();
        ModuleMap::new(m.clone(), n.clone(), images, 0)
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn images(&self) -> &[FreeVector] {
        &self.images
    }

    /// `sum_t v_t * image(e_t)` in the target free module.
    pub fn apply_free(&self, v: &FreeVector) -> FreeVector {
        let alg = self.source.algebra();
        let mut out: Vec<SkewPolynomial> = vec![alg.zero(); self.target.rank()];
        for (t, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (s, img) in self.images[t].iter().enumerate() {
                if !img.is_zero() {
                    out[s] = out[s].add(&alg.multiply(a, img).expect("same algebra"));
                }
            }
        }
        out
    }

    /// The induced linear map `M_d -> N_{d + shift}`.
    pub fn piece_map(&self, d: i64) -> PieceMap {
        let alg = self.source.algebra();
        let src = self.source.piece(d);
        let tgt = self.target.piece(d + self.shift);
        let cols = src
            .basis()
            .map(|(t, m)| {
                let img: FreeVector = self.images[*t].iter().map(|p| alg.mul_monomial_left(m, p)).collect();
                tgt.coords_of_vector(&img)
            })
            .collect();
        PieceMap {
            src_degree: d,
            tgt_degree: d + self.shift,
            map: LinMap::from_columns(src.dim(), tgt.dim(), cols, self.source.field()),
            provenance: Provenance::ModuleMap,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMap) -> Result<ModuleMap, ModuleError> {
        if inner.target != self.source {
            return Err(ModuleError::Composition("inner target differs from outer source".into()));
        }
        let images = inner.images.iter().map(|v| self.apply_free(v)).collect();
        Ok(ModuleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            images,
            shift: inner.shift + self.shift,
        })
    }

    /// The same map between the twists `s^t M -> s^t N`.
    pub fn twist(&self, t: i64) -> ModuleMap {
        ModuleMap {
            source: self.source.twist(t),
            target: self.target.twist(t),
            images: self.images.clone(),
            shift: self.shift,
        }
    }
}

/// `0 -> M1 -f-> M2 -g-> M3 -> 0`, checked to be exact in the requested degrees.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub f: ModuleMap,
    pub g: ModuleMap,
}

impl ShortExactSequence {
    pub fn new(f: ModuleMap, g: ModuleMap, degrees: impl IntoIterator<Item = i64>) -> Result<Self, ModuleError> {
        if f.target != g.source {
            return Err(ModuleError::Composition("middle modules differ".into()));
        }
        let ses = ShortExactSequence { f, g };
        for d in degrees {
            ses.check_degree(d)?;
        }
        Ok(ses)
    }

    pub fn check_degree(&self, d: i64) -> Result<(), ModuleError> {
        let fd = self.f.piece_map(d - self.f.shift);
        let gd = self.g.piece_map(d);
        let err = |message: &str| Err(ModuleError::NotExact { degree: d, message: message.into() });
        if !fd.map.is_injective() {
            return err("first map is not injective");
        }
        if !gd.map.is_surjective() {
            return err("second map is not surjective");
        }
        if !crate::linalg::exact_at(&fd.map, &gd.map) {
            return err("not exact in the middle");
        }
        Ok(())
    }

    pub fn twist(&self, t: i64) -> ShortExactSequence {
        ShortExactSequence { f: self.f.twist(t), g: self.g.twist(t) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::skewalg::{Algebra, Monomial};

    #[test]
    fn identity_is_identity_on_pieces() {
        let a = Algebra::new(2, Field::generic());
        let q = PresentedModule::cyclic_monomial_quotient(a, &[Monomial::new(vec![0, 0, 1])]);
        let id = ModuleMap::identity(&q);
        for d in 0..3 {
            let p = id.piece_map(d);
            assert_eq!(p.map, LinMap::identity(q.piece(d).dim(), q.field()));
        }
    }

    #[test]
    fn projection_onto_quotient() {
        let a = Algebra::new(2, Field::generic());
        let free = PresentedModule::free(a.clone(), vec![0]);
        let q = PresentedModule::cyclic_monomial_quotient(a, &[Monomial::new(vec![0, 0, 1])]);
        let pr = ModuleMap::canonical_projection(&free, &q).unwrap();
        let p1 = pr.piece_map(1);
        assert_eq!(p1.map.rank(), 2);
        assert!(p1.map.is_surjective());
    }

    #[test]
    fn right_multiplication_is_left_linear() {
        let a = Algebra::new(1, Field::generic());
        let src = PresentedModule::free(a.clone(), vec![1]);
        let tgt = PresentedModule::free(a.clone(), vec![0]);
        let f = ModuleMap::new(src, tgt, vec![vec![a.var(0)]], 0).unwrap();
        let p = f.piece_map(1);
        assert_eq!(p.map.rank(), 1);
        assert!(p.map.is_injective());
    }

    #[test]
    fn relation_compatibility_is_checked() {
        let a = Algebra::new(1, Field::generic());
        let q = PresentedModule::cyclic_monomial_quotient(a.clone(), &[Monomial::new(vec![1, 0])]);
        let free = PresentedModule::free(a.clone(), vec![0]);
        let err = ModuleMap::new(q, free, vec![vec![a.one()]], 0).unwrap_err();
        assert_eq!(err, ModuleError::MapRelation { relation: 0 });
    }

    #[test]
    fn functoriality() {
        let a = Algebra::new(1, Field::generic());
        let free = PresentedModule::free(a.clone(), vec![0]);
        let q1 = PresentedModule::cyclic_monomial_quotient(a.clone(), &[Monomial::new(vec![2, 0])]);
        let q2 = PresentedModule::cyclic_monomial_quotient(a.clone(), &[Monomial::new(vec![1, 0])]);
        let f = ModuleMap::canonical_projection(&free, &q1).unwrap();
        let g = ModuleMap::canonical_projection(&q1, &q2).unwrap();
        let gf = g.compose(&f).unwrap();
        for d in 0..4 {
            let lhs = gf.piece_map(d).map;
            let rhs = g.piece_map(d).map.compose(&f.piece_map(d).map).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn ses_validation() {
        let a = Algebra::new(1, Field::generic());
        let m1 = PresentedModule::free(a.clone(), vec![1]);
        let m2 = PresentedModule::free(a.clone(), vec![0]);
        let m3 = PresentedModule::cyclic_monomial_quotient(a.clone(), &[Monomial::new(vec![1, 0])]);
        let f = ModuleMap::new(m1, m2.clone(), vec![vec![a.var(0)]], 0).unwrap();
        let g = ModuleMap::canonical_projection(&m2, &m3).unwrap();
        assert!(ShortExactSequence::new(f.clone(), g, 0..5).is_ok());
        let bad = ModuleMap::identity(&m2);
        assert!(ShortExactSequence::new(f, bad, 0..3).is_err());
    }
}
