pub mod jobs;
pub mod report;
