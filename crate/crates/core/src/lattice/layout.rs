use super::pattern::Site;

/// Tile edge length.
pub const TILE: usize = 5;

/// What happens to a lattice site.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// `Z` in the first round.
    Prune,
    /// `Y` in the second round.
    Junction,
    /// `Y` in the third round.
    Center,
    /// Chain site owned by a vertex, consumed by contraction.
    Wire(usize),
    /// Holds the given target vertex.
    Output(usize),
}

/// A 5×5 measurement template. Letters: `Z` prune, `Y` junction, `C`
/// center, `T` terminal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Template {
    pub name: &'static str,
    pub rows: [&'static str; TILE],
}

/// Terminal positions inside a tile.
pub const LEFT: (usize, usize) = (2, 0);
pub const RIGHT: (usize, usize) = (2, 4);
pub const TOP: (usize, usize) = (0, 2);
pub const BOTTOM: (usize, usize) = (4, 2);

/// Chains left–right and top–bottom that do not touch.
pub const CROSS: Template = Template {
    name: "cross",
    rows: ["ZZTYZ", "YYYYZ", "TZCYT", "YYYZZ", "ZZTZZ"],
};

/// As [`CROSS`] plus an edge between the left and bottom terminals.
pub const EDGE_LB: Template = Template {
    name: "edge-lb",
    rows: ["ZYTYZ", "YYZYZ", "TYCYT", "YYYZZ", "ZZTZZ"],
};

/// As [`CROSS`] plus an edge between the right and bottom terminals.
pub const EDGE_RB: Template = Template {
    name: "edge-rb",
    rows: ["ZZTYZ", "ZYYYZ", "TYCYT", "ZZYZZ", "ZZTZZ"],
};

/// A single left–right chain.
pub const PASS_H: Template = Template {
    name: "pass-H",
    rows: ["ZZZZZ", "ZZZZZ", "TYCYT", "ZZZZZ", "ZZZZZ"],
};

/// Arms of a vertex tile, listed outward from the center.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Arms {
    pub left: bool,
    pub right: bool,
    pub down: bool,
}

/// Role of every site on a tiled lattice.
#[derive(Clone, Debug)]
pub struct Layout {
    pub rows: usize,
    pub cols: usize,
    roles: Vec<Role>,
}

impl Layout {
    pub fn new(tile_rows: usize, tile_cols: usize) -> Self {
        let (rows, cols) = (tile_rows * TILE, tile_cols * TILE);
        Self {
            rows,
            cols,
            roles: vec![Role::Prune; rows * cols],
        }
    }

    pub fn role(&self, s: Site) -> Role {
        self.roles[self.index(s)]
    }

    pub fn index(&self, s: Site) -> usize {
        s.row * self.cols + s.col
    }

    pub fn site(&self, i: usize) -> Site {
        Site::new(i / self.cols, i % self.cols)
    }

    pub fn sites(&self) -> impl Iterator<Item = (Site, Role)> + '_ {
        self.roles
            .iter()
            .enumerate()
            .map(|(i, &r)| (self.site(i), r))
    }

    fn set(&mut self, tr: usize, tc: usize, (r, c): (usize, usize), role: Role) {
        let s = Site::new(tr * TILE + r, tc * TILE + c);
        let i = self.index(s);
        self.roles[i] = role;
    }

    /// Places a template; the row chain belongs to `row_owner`, the column
    /// chain to `col_owner`.
    pub fn place(
        &mut self,
        tr: usize,
        tc: usize,
        t: &Template,
        row_owner: usize,
        col_owner: usize,
    ) {
        for (r, line) in t.rows.iter().enumerate() {
            for (c, ch) in line.chars().enumerate() {
                let role = match ch {
                    'Z' => Role::Prune,
                    'Y' => Role::Junction,
                    'C' => Role::Center,
                    'T' if r == TILE / 2 => Role::Wire(row_owner),
                    'T' => Role::Wire(col_owner),
                    _ => unreachable!("bad template letter {ch}"),
                };
                self.set(tr, tc, (r, c), role);
            }
        }
    }

    /// Places vertex `v` at the tile center with the requested arms.
    pub fn place_vertex(&mut self, tr: usize, tc: usize, v: usize, arms: Arms) {
        self.set(tr, tc, (2, 2), Role::Output(v));
        if arms.left {
            self.set(tr, tc, (2, 1), Role::Wire(v));
            self.set(tr, tc, LEFT, Role::Wire(v));
        }
        if arms.right {
            self.set(tr, tc, (2, 3), Role::Wire(v));
            self.set(tr, tc, RIGHT, Role::Wire(v));
        }
        if arms.down {
            self.set(tr, tc, (3, 2), Role::Wire(v));
            self.set(tr, tc, BOTTOM, Role::Wire(v));
        }
    }

    /// Hands the left arm of the tile at `(tr, tc)` to `owner`.
    pub fn give_left_arm(&mut self, tr: usize, tc: usize, owner: usize) {
        self.set(tr, tc, (2, 1), Role::Wire(owner));
        self.set(tr, tc, LEFT, Role::Wire(owner));
    }
}
