//! Injective homomorphisms between subgroups, stored as full tables.

use std::collections::HashMap;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::group::Subgroup;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupMorphism {
    source: Subgroup,
    target: Subgroup,
    /// `images[i]` is the image of `source.elements()[i]`.
    images: Vec<Element>,
}

impl std::fmt::Debug for GroupMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.source.generators().iter().map(|g| (g, self.apply(g).unwrap())))
            .finish()
    }
}

impl GroupMorphism {
    /// Validates that `images` defines an injective homomorphism into `target`.
    pub fn new(source: Subgroup, target: Subgroup, images: Vec<Element>) -> Result<Self> {
        if images.len() != source.elements().len() {
            return Err(Error::invalid("morphism table has the wrong length"));
        }
        let m = GroupMorphism {
            source,
            target,
            images,
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(source: Subgroup, target: Subgroup, images: Vec<Element>) -> Self {
        debug_assert_eq!(images.len(), source.elements().len());
        GroupMorphism {
            source,
            target,
            images,
        }
    }

    /// Extends generator images to the whole source by walking words in the
    /// generators; inconsistent images are rejected.
    pub fn from_generator_images(
        source: Subgroup,
        target: Subgroup,
        generators: &[Element],
        generator_images: &[Element],
    ) -> Result<Self> {
        if generators.len() != generator_images.len() {
            return Err(Error::invalid(format!(
                "{} generators but {} images",
                generators.len(),
                generator_images.len()
            )));
        }
        let span = Subgroup::generated(&source.identity(), generators, source.order())?;
        if span != source {
            return Err(Error::invalid("generators do not generate the source subgroup"));
        }
        let mut map: HashMap<Element, Element> = HashMap::new();
        let id = source.identity();
        map.insert(id.clone(), target.identity());
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            let fx = map[&x].clone();
            for (g, fg) in generators.iter().zip(generator_images) {
                let y = x.mul(g);
                let fy = fx.mul(fg);
                match map.get(&y) {
                    Some(prev) if *prev != fy => {
                        return Err(Error::invalid("generator images do not define a homomorphism"))
                    }
                    Some(_) => {}
                    None => {
                        map.insert(y.clone(), fy);
                        queue.push(y);
                    }
                }
            }
        }
        let images = source.elements().iter().map(|e| map[e].clone()).collect();
        GroupMorphism::new(source, target, images)
    }

    /// `c_g|_Q : z ↦ z^g = g⁻¹zg`, into `target`.
    pub fn conjugation(source: Subgroup, g: &Element, target: Subgroup) -> Result<Self> {
        let images = source.elements().iter().map(|z| z.conj(g)).collect();
        GroupMorphism::new(source, target, images)
    }

    fn validate(&self) -> Result<()> {
        let src = self.source.elements();
        let index: HashMap<&Element, usize> = src.iter().enumerate().map(|(i, e)| (e, i)).collect();
        for (i, a) in src.iter().enumerate() {
            if !self.target.contains(&self.images[i]) {
                return Err(Error::invalid("morphism image leaves the target"));
            }
            for (j, b) in src.iter().enumerate() {
                let ab = index[&a.mul(b)];
                if self.images[ab] != self.images[i].mul(&self.images[j]) {
                    return Err(Error::invalid("table is not a homomorphism"));
                }
            }
        }
        let mut seen: Vec<&Element> = self.images.iter().collect();
        seen.sort();
        seen.dedup();
        if seen.len() != self.images.len() {
            return Err(Error::invalid("morphism is not injective"));
        }
        Ok(())
    }

    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn target(&self) -> &Subgroup {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn apply(&self, x: &Element) -> Option<&Element> {
        self.source
            .elements()
            .binary_search(x)
            .ok()
            .map(|i| &self.images[i])
    }

    /// The image subgroup `φ(Q)`.
    pub fn image(&self) -> Subgroup {
        let gens: Vec<Element> = self
            .source
            .generators()
            .iter()
            .map(|g| self.apply(g).unwrap().clone())
            .collect();
        Subgroup::from_element_set(self.images.clone(), gens)
    }

    pub fn is_inclusion(&self) -> bool {
        self.source.elements() == self.images.as_slice()
    }

    /// Whether `g` realizes this map by conjugation.
    pub fn is_conjugation_by(&self, g: &Element) -> bool {
        self.source
            .elements()
            .iter()
            .zip(&self.images)
            .all(|(z, fz)| z.conj(g) == *fz)
    }
}
