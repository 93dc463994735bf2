//! Compensated (Kahan) summation for long averages.

use num_complex::Complex64;

/// Kahan-compensated real accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanF64 {
    sum: f64,
    comp: f64,
}

impl KahanF64 {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let y = value - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Kahan-compensated complex accumulator (per-component compensation).
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanC64 {
    re: KahanF64,
    im: KahanF64,
}

impl KahanC64 {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: Complex64) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}
