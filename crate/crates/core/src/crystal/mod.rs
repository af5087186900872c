//! The rank-2 affine crystal on strict partitions and its tensor powers.
//!
//! Boxes carry residues `(col - row) mod 2`. Addable and removable i-boxes
//! are the ordinary Young-diagram candidates (moves that keep the parts
//! weakly decreasing); the raising and lowering operators come from the
//! signature rule on the word of those boxes. Restricting candidacy to
//! strictness-preserving moves instead would break the weight pairing: at
//! (4,3,1) and residue 0 it leaves one addable and one removable box while
//! phi - eps must be 1, so no reading order could repair it.
//!
//! On strict partitions the selected good box always preserves strictness;
//! an operator whose selected box would violate it annihilates instead,
//! which only ever happens under miscalibrated reading conventions.
//!
//! Two reading conventions are left open (the order boxes are read in, and
//! the order tensor factors are read in); [`tensor::calibrate_convention`]
//! pins them empirically against the strict-partition and Kleshchev
//! enumerations.

mod tensor;

pub use tensor::{
    calibrate_convention, dot_dump, generate_component, tensor_e, tensor_eps, tensor_f,
    tensor_phi, verify_crystal_theorem, CalibrationOutcome,
};

use serde::{Deserialize, Serialize};

use crate::partitions::StrictPartition;

/// Position of a box, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NodePos {
    pub row: usize,
    pub col: u32,
}

/// Residue of the box at (row, col): `(col - row) mod 2`.
pub fn residue(pos: NodePos) -> u8 {
    ((pos.col as i64 - pos.row as i64).rem_euclid(2)) as u8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeOrder {
    TopDown,
    BottomUp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TensorOrder {
    LeftFirst,
    RightFirst,
}

/// Reading conventions for the signature rule, fixed once by calibration
/// and echoed in every crystal report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convention {
    pub node_order: NodeOrder,
    pub tensor_order: TensorOrder,
}

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention {
            node_order: NodeOrder::TopDown,
            tensor_order: TensorOrder::LeftFirst,
        },
        Convention {
            node_order: NodeOrder::TopDown,
            tensor_order: TensorOrder::RightFirst,
        },
        Convention {
            node_order: NodeOrder::BottomUp,
            tensor_order: TensorOrder::LeftFirst,
        },
        Convention {
            node_order: NodeOrder::BottomUp,
            tensor_order: TensorOrder::RightFirst,
        },
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Addable i-boxes in ascending row order: ordinary Young-diagram
/// candidates, i.e. row ends whose extension keeps the parts weakly
/// decreasing, including a new final row of size 1.
pub fn addable_nodes(lambda: &StrictPartition, i: u8) -> Vec<NodePos> {
    addable_nodes_res(lambda, i, 0)
}

/// Removable i-boxes in ascending row order: row ends whose removal keeps
/// the parts weakly decreasing (removing the single box of a final row
/// deletes the row).
pub fn removable_nodes(lambda: &StrictPartition, i: u8) -> Vec<NodePos> {
    removable_nodes_res(lambda, i, 0)
}

// The `res_offset` variants exist so calibration tests can demonstrate that
// the mirrored residue convention fails; production code uses offset 0.
pub(crate) fn addable_nodes_res(lambda: &StrictPartition, i: u8, res_offset: u8) -> Vec<NodePos> {
    let mut out = Vec::new();
    let parts = lambda.parts();
    for row in 1..=parts.len() + 1 {
        let current = lambda.part_at(row);
        let candidate = NodePos {
            row,
            col: current + 1,
        };
        let keeps_partition = row == 1 || lambda.part_at(row - 1) >= current + 1;
        if keeps_partition && (residue(candidate) + res_offset) % 2 == i {
            out.push(candidate);
        }
    }
    out
}

pub(crate) fn removable_nodes_res(lambda: &StrictPartition, i: u8, res_offset: u8) -> Vec<NodePos> {
    let mut out = Vec::new();
    let parts = lambda.parts();
    for row in 1..=parts.len() {
        let current = parts[row - 1];
        let candidate = NodePos { row, col: current };
        let keeps_partition = row == parts.len() || current - 1 >= parts[row];
        if keeps_partition && (residue(candidate) + res_offset) % 2 == i {
            out.push(candidate);
        }
    }
    out
}

/// Result of reducing a +/- word: counts of surviving signs and the
/// positions (indices into the input word) acted on by the lowering and
/// raising operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub phi: usize,
    pub eps: usize,
    pub f_slot: Option<usize>,
    pub e_slot: Option<usize>,
}

/// Cancel adjacent "- +" pairs (a minus immediately followed, after prior
/// cancellations, by a plus) until none remain. The reduced word has the
/// shape `+^phi -^eps`; the lowering slot is the last surviving plus and
/// the raising slot is the first surviving minus.
pub fn signature_reduce(word: &[Sign]) -> Reduced {
    let mut stack: Vec<(Sign, usize)> = Vec::new();
    for (idx, &s) in word.iter().enumerate() {
        match s {
            Sign::Plus => {
                if matches!(stack.last(), Some((Sign::Minus, _))) {
                    stack.pop();
                } else {
                    stack.push((Sign::Plus, idx));
                }
            }
            Sign::Minus => stack.push((Sign::Minus, idx)),
        }
    }
    let phi = stack.iter().filter(|(s, _)| *s == Sign::Plus).count();
    let eps = stack.len() - phi;
    let f_slot = stack
        .iter()
        .filter(|(s, _)| *s == Sign::Plus)
        .map(|(_, idx)| *idx)
        .next_back();
    let e_slot = stack
        .iter()
        .find(|(s, _)| *s == Sign::Minus)
        .map(|(_, idx)| *idx);
    Reduced {
        phi,
        eps,
        f_slot,
        e_slot,
    }
}

/// The signature word of a single strict partition: one sign per row that
/// carries an addable (+) or removable (-) i-box, read in the convention's
/// row order.
pub fn signature_word(
    lambda: &StrictPartition,
    i: u8,
    order: NodeOrder,
) -> Vec<(Sign, NodePos)> {
    signature_word_res(lambda, i, order, 0)
}

pub(crate) fn signature_word_res(
    lambda: &StrictPartition,
    i: u8,
    order: NodeOrder,
    res_offset: u8,
) -> Vec<(Sign, NodePos)> {
    let mut entries: Vec<(Sign, NodePos)> = addable_nodes_res(lambda, i, res_offset)
        .into_iter()
        .map(|p| (Sign::Plus, p))
        .chain(
            removable_nodes_res(lambda, i, res_offset)
                .into_iter()
                .map(|p| (Sign::Minus, p)),
        )
        .collect();
    entries.sort_by_key(|(_, p)| p.row);
    if order == NodeOrder::BottomUp {
        entries.reverse();
    }
    entries
}

// Box moves return None when the result is not strict; the calibrated
// convention never selects such a box.
pub(crate) fn add_box(lambda: &StrictPartition, pos: NodePos) -> Option<StrictPartition> {
    let mut parts = lambda.parts().to_vec();
    if pos.row == parts.len() + 1 {
        parts.push(1);
    } else {
        parts[pos.row - 1] += 1;
    }
    parts
        .windows(2)
        .all(|w| w[0] > w[1])
        .then(|| StrictPartition::new(parts))
}

pub(crate) fn remove_box(lambda: &StrictPartition, pos: NodePos) -> Option<StrictPartition> {
    let mut parts = lambda.parts().to_vec();
    parts[pos.row - 1] -= 1;
    if parts[pos.row - 1] == 0 {
        parts.remove(pos.row - 1);
    }
    parts
        .windows(2)
        .all(|w| w[0] > w[1])
        .then(|| StrictPartition::new(parts))
}

/// Lowering operator: add a box at the selected slot, or annihilate.
pub fn f_op(lambda: &StrictPartition, i: u8, conv: &Convention) -> Option<StrictPartition> {
    let word = signature_word(lambda, i, conv.node_order);
    let signs: Vec<Sign> = word.iter().map(|(s, _)| *s).collect();
    signature_reduce(&signs)
        .f_slot
        .and_then(|idx| add_box(lambda, word[idx].1))
}

/// Raising operator: remove the box at the selected slot, or annihilate.
pub fn e_op(lambda: &StrictPartition, i: u8, conv: &Convention) -> Option<StrictPartition> {
    let word = signature_word(lambda, i, conv.node_order);
    let signs: Vec<Sign> = word.iter().map(|(s, _)| *s).collect();
    signature_reduce(&signs)
        .e_slot
        .and_then(|idx| remove_box(lambda, word[idx].1))
}

pub fn phi(lambda: &StrictPartition, i: u8, conv: &Convention) -> usize {
    let signs: Vec<Sign> = signature_word(lambda, i, conv.node_order)
        .iter()
        .map(|(s, _)| *s)
        .collect();
    signature_reduce(&signs).phi
}

pub fn eps(lambda: &StrictPartition, i: u8, conv: &Convention) -> usize {
    let signs: Vec<Sign> = signature_word(lambda, i, conv.node_order)
        .iter()
        .map(|(s, _)| *s)
        .collect();
    signature_reduce(&signs).eps
}
