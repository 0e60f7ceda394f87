pub mod exactlin;
pub mod liegroup;
pub mod quadric;
pub mod randers;
pub mod rootsys;
pub mod strata;
