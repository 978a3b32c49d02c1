pub mod cyclo;
pub mod hopf;
pub mod rt;
pub mod coend;
pub mod surface;
