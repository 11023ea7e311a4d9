//! Expression trees for the multivector grammar, plus a printer whose
//! output reparses to the identical tree.

/// Prefix operators; all bind tighter than any product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnaryOp {
    /// `~` reversal
    Reverse,
    /// `!` grade involution
    Involute,
    /// `*` duality map under the session metric
    Dual,
}

impl UnaryOp {
    pub fn symbol(self) -> char {
        match self {
            UnaryOp::Reverse => '~',
            UnaryOp::Involute => '!',
            UnaryOp::Dual => '*',
        }
    }
}

/// Infix operators, loosest first: `+ -`, then `|`, `<< >>`, `%`, `^`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    ScalarProduct,
    ContractLeft,
    ContractRight,
    Clifford,
    Wedge,
}

impl BinaryOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Add => "+",
            BinaryOp::Sub => "-",
            BinaryOp::ScalarProduct => "|",
            BinaryOp::ContractLeft => "<<",
            BinaryOp::ContractRight => ">>",
            BinaryOp::Clifford => "%",
            BinaryOp::Wedge => "^",
        }
    }

    /// Binding strength; all infix operators associate to the left.
    pub fn precedence(self) -> u8 {
        match self {
            BinaryOp::Add | BinaryOp::Sub => 1,
            BinaryOp::ScalarProduct => 2,
            BinaryOp::ContractLeft | BinaryOp::ContractRight => 3,
            BinaryOp::Clifford => 4,
            BinaryOp::Wedge => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    /// Nonnegative literal; negation is spelled `0 - x`.
    Number(f64),
    /// Basis vector `e<k>`, 1-based.
    Basis(usize),
    Unary(UnaryOp, Box<Expr>),
    Binary(BinaryOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Minimal-parenthesis rendering.
    pub fn render(&self) -> String {
        render_prec(self, 0)
    }
}

fn render_prec(expr: &Expr, min_prec: u8) -> String {
    match expr {
        Expr::Number(v) => render_number(*v),
        Expr::Basis(k) => format!("e{k}"),
        Expr::Unary(op, inner) => {
            // Unary operands that are infix expressions always need parens.
            let body = match **inner {
                Expr::Binary(..) => format!("({})", render_prec(inner, 0)),
                _ => render_prec(inner, u8::MAX),
            };
            format!("{}{}", op.symbol(), body)
        }
        Expr::Binary(op, lhs, rhs) => {
            let p = op.precedence();
            let s = format!(
                "{} {} {}",
                render_prec(lhs, p),
                op.symbol(),
                render_prec(rhs, p + 1)
            );
            if p < min_prec {
                format!("({s})")
            } else {
                s
            }
        }
    }
}

/// Plain decimal rendering; the grammar has no exponent literals.
fn render_number(v: f64) -> String {
    let s = format!("{v}");
    if !s.contains('e') && !s.contains('E') {
        return s;
    }
    let expanded = format!("{v:.17}");
    let trimmed = expanded.trim_end_matches('0');
    let trimmed = trimmed.strip_suffix('.').unwrap_or(trimmed);
    trimmed.to_string()
}
