pub mod chevalg;
pub mod grp;
pub mod nets;
pub mod ringkit;
pub mod rootsys;
pub mod verify;
