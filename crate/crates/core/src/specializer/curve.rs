use crate::finite_field::Field;

/// A point of `y^2 = x^3 + a x + b` in affine coordinates.
#[derive(Clone, Debug, PartialEq)]
pub enum Point<E> {
    Infinity,
    Affine(E, E),
}

/// Group law on a short Weierstrass curve over `F`.
pub struct Curve<'a, F: Field> {
    pub field: &'a F,
    pub a: F::Elem,
    pub b: F::Elem,
}

impl<F: Field> Curve<'_, F> {
    pub fn contains(&self, pt: &Point<F::Elem>) -> bool {
        let f = self.field;
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => f.mul(y, y) == self.rhs(x),
        }
    }

    pub fn rhs(&self, x: &F::Elem) -> F::Elem {
        let f = self.field;
        let x3 = f.mul(&f.mul(x, x), x);
        f.add(&f.add(&x3, &f.mul(&self.a, x)), &self.b)
    }

    pub fn neg(&self, pt: &Point<F::Elem>) -> Point<F::Elem> {
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), self.field.neg(y)),
        }
    }

    pub fn add(&self, p1: &Point<F::Elem>, p2: &Point<F::Elem>) -> Point<F::Elem> {
        let f = self.field;
        let (x1, y1, x2, y2) = match (p1, p2) {
            (Point::Infinity, q) | (q, Point::Infinity) => return q.clone(),
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if f.is_zero(&f.add(y1, y2)) {
                return Point::Infinity;
            }
            let num = f.add(&f.mul(&f.from_u64(3), &f.mul(x1, x1)), &self.a);
            f.div(&num, &f.add(y1, y1)).expect("y1 != 0")
        } else {
            f.div(&f.sub(y2, y1), &f.sub(x2, x1)).expect("x1 != x2")
        };
        let x3 = f.sub(&f.sub(&f.mul(&slope, &slope), x1), x2);
        let y3 = f.sub(&f.mul(&slope, &f.sub(x1, &x3)), y1);
        Point::Affine(x3, y3)
    }

    pub fn mul(&self, pt: &Point<F::Elem>, mut k: u64) -> Point<F::Elem> {
        let mut acc = Point::Infinity;
        let mut base = pt.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }
}
