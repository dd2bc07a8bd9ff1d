//! Fan-out of independent verification cases. Results always come back in
//! case order, so reports do not depend on scheduling.

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExecMode {
    /// Use the worker pool when the crate is built with it.
    #[default]
    Auto,
    Sequential,
}

pub fn map_cases<T, R, F>(mode: ExecMode, items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    match mode {
        ExecMode::Sequential => items.into_iter().map(f).collect(),
        ExecMode::Auto => map_auto(items, f),
    }
}

#[cfg(feature = "parallel")]
fn map_auto<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_auto<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync + Send,
{
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..1000).collect();
        let a = map_cases(ExecMode::Auto, items.clone(), |i| i * i);
        let b = map_cases(ExecMode::Sequential, items, |i| i * i);
        assert_eq!(a, b);
    }
}
