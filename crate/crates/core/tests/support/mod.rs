#![allow(dead_code)]

pub mod oracle;
pub mod pairs;
pub mod singer;
