//! Laurent series in a local coordinate t = ζ − a whose coefficients are
//! partial-fraction tensors in the outer variables.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exactmath::{LSeries, Rat};

/// (a, d) stands for 1/(z − a)^d; (0, 0) is the constant 1.
pub type Slot = (i8, u32);
pub type Key = Vec<Slot>;
pub const ONE: Slot = (0, 0);

pub type Tensor = BTreeMap<Key, Rat>;

/// Coefficients of t^e for val <= e < prec.
#[derive(Clone, Debug)]
pub(crate) struct TSeries {
    val: i64,
    c: Vec<Tensor>,
}

fn merge(a: &Key, b: &Key) -> Key {
    a.iter()
        .zip(b)
        .map(|(x, y)| match (*x == ONE, *y == ONE) {
            (_, true) => *x,
            (true, false) => *y,
            (false, false) => panic!("two factors share an outer variable"),
        })
        .collect()
}

fn add_to(t: &mut Tensor, k: Key, v: Rat) {
    if v.is_zero() {
        return;
    }
    match t.entry(k) {
        Entry::Vacant(e) => {
            e.insert(v);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += v;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl TSeries {
    pub fn zero(val: i64, prec: i64) -> Self {
        TSeries { val, c: vec![Tensor::new(); (prec - val).max(0) as usize] }
    }

    #[cfg(test)]
    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn prec(&self) -> i64 {
        self.val + self.c.len() as i64
    }

    pub fn coeff(&self, e: i64) -> Tensor {
        assert!(e < self.prec(), "t^{e} beyond precision {}", self.prec());
        if e < self.val {
            Tensor::new()
        } else {
            self.c[(e - self.val) as usize].clone()
        }
    }

    /// self += coef · s ⊗ key, on the range of self.
    pub fn add_scaled(&mut self, s: &LSeries, coef: &Rat, key: &Key) {
        for e in s.val()..self.val.min(s.prec()) {
            assert!(s.coeff(e).is_zero(), "series below the stored valuation");
        }
        assert!(s.prec() >= self.prec(), "series known to {} < {}", s.prec(), self.prec());
        for e in self.val.max(s.val())..self.prec() {
            let x = s.coeff(e);
            if !x.is_zero() {
                add_to(&mut self.c[(e - self.val) as usize], key.clone(), x * coef);
            }
        }
    }

    /// self += o on the common range; o must not start below self.
    pub fn add_assign(&mut self, o: &TSeries) {
        assert!(o.val >= self.val && o.prec() >= self.prec());
        for e in o.val..self.prec() {
            for (k, v) in &o.c[(e - o.val) as usize] {
                add_to(&mut self.c[(e - self.val) as usize], k.clone(), v.clone());
            }
        }
    }

    pub fn mul(&self, o: &TSeries) -> TSeries {
        let val = self.val + o.val;
        let prec = (self.prec() + o.val).min(o.prec() + self.val);
        let mut r = TSeries::zero(val, prec);
        let n = r.c.len();
        for (i, a) in self.c.iter().enumerate().take(n) {
            for (j, b) in o.c.iter().enumerate().take(n - i) {
                for (ka, va) in a {
                    for (kb, vb) in b {
                        add_to(&mut r.c[i + j], merge(ka, kb), va * vb);
                    }
                }
            }
        }
        r
    }
}
