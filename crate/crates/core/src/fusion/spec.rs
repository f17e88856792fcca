//! Fusion-system documents.
//!
//! ```json
//! {"group_realized": {"group": GroupSpec, "prime": 2}}
//! {"generated": {"p_group": GroupSpec,
//!                "automorphisms": [{"subgroup_generators": [g, ...],
//!                                   "maps": [[image of g, ...], ...]}]}}
//! ```
//!
//! Each map lists the images of the subgroup generators, in order.

use serde::{Deserialize, Serialize};

use super::{generate, fusion_of_group, FusionSystem, GeneratorPart, PGroup};
use crate::catalog::{build, ElementSpec, GroupSpec};
use crate::error::{Error, Result};
use crate::group::Caps;
use crate::morphism::GroupMorphism;
use crate::structure::sylow;
use crate::table::prime_of_power;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismSpec {
    pub subgroup_generators: Vec<ElementSpec>,
    pub maps: Vec<Vec<ElementSpec>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum FusionSpec {
    GroupRealized {
        group: GroupSpec,
        prime: u64,
    },
    Generated {
        p_group: GroupSpec,
        automorphisms: Vec<AutomorphismSpec>,
    },
}

impl FusionSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("specs serialize")
    }

    pub fn build(&self, caps: &Caps) -> Result<FusionSystem> {
        match self {
            FusionSpec::GroupRealized { group, prime } => {
                let g = build(group, caps)?;
                let p = sylow(&g, *prime, caps)?;
                fusion_of_group(&g, &p, *prime, caps)
            }
            FusionSpec::Generated {
                p_group,
                automorphisms,
            } => {
                let g = build(p_group, caps)?;
                let p = prime_of_power(g.order()).ok_or(Error::NotPGroup {
                    order: g.order(),
                    p: 0,
                })?;
                let whole = g.as_subgroup();
                let pg = PGroup::new(&whole, p, caps)?;
                let mut morphisms = Vec::new();
                for a in automorphisms {
                    let gens = a
                        .subgroup_generators
                        .iter()
                        .map(|e| e.to_element(g.kind()))
                        .collect::<Result<Vec<_>>>()?;
                    let source = g.closure(&gens, caps)?;
                    for map in &a.maps {
                        let images = map
                            .iter()
                            .map(|e| e.to_element(g.kind()))
                            .collect::<Result<Vec<_>>>()?;
                        morphisms.push(GroupMorphism::from_generator_images(
                            source.clone(),
                            whole.clone(),
                            &gens,
                            &images,
                        )?);
                    }
                }
                generate(&pg, pg.top(), &[GeneratorPart::Morphisms(morphisms)])
            }
        }
    }
}
