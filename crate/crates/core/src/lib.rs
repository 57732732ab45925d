pub mod dessin;
pub mod ends;
pub mod fpgroup;
pub mod homology;
pub mod modular;
pub mod permcore;
pub mod superelliptic;
pub mod triangle;
