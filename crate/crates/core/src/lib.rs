pub mod polyring;
pub mod groebner;
pub mod diagram;
pub mod presentation;
pub mod flag;
pub mod table;
