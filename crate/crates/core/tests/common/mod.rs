#![allow(dead_code)]

pub mod oracle;
pub mod poly;
pub mod soundness;
