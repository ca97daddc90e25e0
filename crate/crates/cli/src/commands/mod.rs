pub mod density;
pub mod iso;
pub mod lemmas;
pub mod scan;
