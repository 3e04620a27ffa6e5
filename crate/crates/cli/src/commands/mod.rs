pub mod econ_cmd;
pub mod fcc;
pub mod gen;
pub mod mw;
pub mod respond;
pub mod stats_cmd;
