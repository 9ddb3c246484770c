//! Occupation-number basis grouped by conserved particle numbers.
//!
//! Site i's spin-up mode sits on qubit 2i and spin-down on qubit 2i + 1,
//! so on-site interaction terms are local Z (x) Z factors under the
//! Jordan-Wigner convention "qubit 0 first in the string".

use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard cap on instance size; keeps every dense block at desk scale.
pub const MAX_SITES: usize = 7;

const UP_MASK: u32 = 0x5555_5555;

/// One (n_up, n_dn) particle-number sector.
#[derive(Debug, Clone)]
pub struct Sector {
    pub n_up: u8,
    pub n_dn: u8,
    /// Member basis states, ascending.
    pub states: Vec<u32>,
}

/// Full 2^(2 n_sites) basis, partitioned into particle-number sectors.
///
/// Every operator the oracle builds conserves (n_up, n_dn), so matrices are
/// stored as one dense block per sector; the largest block on 6 sites is
/// 400-dimensional, which keeps exact checks fast.
#[derive(Debug)]
pub struct SectorBasis {
    pub n_sites: usize,
    pub n_qubits: usize,
    sectors: Vec<Sector>,
    /// state -> (sector index, row within the sector block)
    locate: Vec<(u16, u32)>,
}

impl SectorBasis {
    pub fn new(n_sites: usize) -> Result<Arc<Self>> {
        if n_sites == 0 || n_sites > MAX_SITES {
            return Err(Error::InstanceTooLarge { qubits: 2 * n_sites, max: 2 * MAX_SITES });
        }
        let n_qubits = 2 * n_sites;
        let dim = 1u32 << n_qubits;
        let mut sectors: Vec<Sector> = Vec::new();
        let mut index = vec![[usize::MAX; 8]; 8];
        let mut locate = vec![(0u16, 0u32); dim as usize];
        for x in 0..dim {
            let n_up = (x & UP_MASK).count_ones() as u8;
            let n_dn = (x & !UP_MASK).count_ones() as u8;
            let slot = &mut index[n_up as usize][n_dn as usize];
            if *slot == usize::MAX {
                *slot = sectors.len();
                sectors.push(Sector { n_up, n_dn, states: Vec::new() });
            }
            let sector = &mut sectors[*slot];
            locate[x as usize] = (*slot as u16, sector.states.len() as u32);
            sector.states.push(x);
        }
        Ok(Arc::new(Self { n_sites, n_qubits, sectors, locate }))
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    /// Sector index and block row of a basis state.
    pub fn locate(&self, state: u32) -> (usize, usize) {
        let (s, p) = self.locate[state as usize];
        (s as usize, p as usize)
    }
}
