use crate::error::Result;
use crate::geometry::HyperRect;

/// An online algorithm: sees one box at a time and decides irrevocably.
pub trait OnlineSelector {
    /// Offers the next arrival; `true` means it is selected.
    fn offer(&mut self, h: &HyperRect) -> Result<bool>;
}
