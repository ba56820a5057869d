pub mod cli;
pub mod model;
pub mod numerics;
pub mod sl2;
pub mod spectra;
