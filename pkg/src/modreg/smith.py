"""Smith normal form over the integers, with unimodular transform tracking.

The reduction is the classical one: move the smallest-magnitude entry of the
working block to the pivot, clear the pivot's row and column, and re-pivot on
any division remainder (which is strictly smaller, so the loop terminates).
Once the cross is clear, any block entry the pivot fails to divide gets its
row folded into the pivot row and the clearing restarts; this is what makes
the final diagonal a divisibility chain.  All arithmetic is exact ``int``.
"""

import re
from dataclasses import dataclass

from .abgroups import FgAbGroup
from .errors import DomainError, ParseError


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, row-major, immutable."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DomainError("matrix dimensions must be >= 0")
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))
        if len(self.entries) != self.rows * self.cols:
            raise DomainError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows_data) -> "IntMatrix":
        rows_data = [list(r) for r in rows_data]
        rows = len(rows_data)
        cols = len(rows_data[0]) if rows_data else 0
        if any(len(r) != cols for r in rows_data):
            raise DomainError("ragged rows")
        return cls(rows, cols, tuple(x for r in rows_data for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [
            list(self.entries[i * self.cols : (i + 1) * self.cols])
            for i in range(self.rows)
        ]

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entry(i, i) for i in range(min(self.rows, self.cols)))


@dataclass(frozen=True)
class SnfResult:
    """Unimodular U, V and diagonal D with U * A * V = D."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        return self.D.diagonal()


def multiply(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise DomainError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    rows_a = a.to_rows()
    rows_b = b.to_rows()
    out = []
    for i in range(a.rows):
        ra = rows_a[i]
        out.append(
            [sum(ra[k] * rows_b[k][j] for k in range(a.cols)) for j in range(b.cols)]
        )
    if not out:
        return IntMatrix(a.rows, b.cols, ())
    return IntMatrix.from_rows(out) if b.cols else IntMatrix(a.rows, 0, ())


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise DomainError("determinant requires a square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _smallest_nonzero(a, start, rows, cols):
    best = None
    best_abs = None
    for i in range(start, rows):
        row = a[i]
        for j in range(start, cols):
            x = row[j]
            if x != 0 and (best_abs is None or abs(x) < best_abs):
                best = (i, j)
                best_abs = abs(x)
    return best


def smith_normal_form(matrix: IntMatrix) -> SnfResult:
    """Compute U, D, V with U*A*V = D, D a non-negative divisibility chain.

    The diagonal of D is uniquely determined by A (its determinantal
    divisors); U and V are some unimodular witnesses, not canonical.
    """
    rows, cols = matrix.rows, matrix.cols
    a = matrix.to_rows()
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_sub(i, k, q):
        ai, ak = a[i], a[k]
        ui, uk = u[i], u[k]
        for j in range(cols):
            ai[j] -= q * ak[j]
        for j in range(rows):
            ui[j] -= q * uk[j]

    def row_add(i, k):
        row_sub(i, k, -1)

    def col_sub(j, k, q):
        for i in range(rows):
            a[i][j] -= q * a[i][k]
        for i in range(cols):
            v[i][j] -= q * v[i][k]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def col_swap(j, k):
        for i in range(rows):
            a[i][j], a[i][k] = a[i][k], a[i][j]
        for i in range(cols):
            v[i][j], v[i][k] = v[i][k], v[i][j]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    for t in range(min(rows, cols)):
        pivot = _smallest_nonzero(a, t, rows, cols)
        if pivot is None:
            break
        if pivot[0] != t:
            row_swap(pivot[0], t)
        if pivot[1] != t:
            col_swap(pivot[1], t)

        while True:
            if a[t][t] < 0:
                row_negate(t)
            p = a[t][t]
            restart = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        row_sub(i, t, q)
                    if a[i][t]:
                        # remainder is a strictly smaller pivot candidate
                        row_swap(i, t)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        col_sub(j, t, q)
                    if a[t][j]:
                        col_swap(j, t)
                        restart = True
                        break
            if restart:
                continue
            bad_row = None
            for i in range(t + 1, rows):
                if any(a[i][j] % p for j in range(t + 1, cols)):
                    bad_row = i
                    break
            if bad_row is None:
                break
            row_add(t, bad_row)

    return SnfResult(
        U=IntMatrix.from_rows(u) if rows else IntMatrix(0, 0, ()),
        D=IntMatrix.from_rows(a) if rows and cols else IntMatrix(rows, cols, ()),
        V=IntMatrix.from_rows(v) if cols else IntMatrix(0, 0, ()),
    )


def cokernel_structure(matrix: IntMatrix) -> FgAbGroup:
    """Structure of Z^rows modulo the column span of the matrix.

    The free rank is the number of rows not pinned by a nonzero diagonal
    entry; unit entries contribute trivial summands and are dropped.
    """
    diag = smith_normal_form(matrix).diagonal()
    nonzero = [d for d in diag if d != 0]
    return FgAbGroup(
        matrix.rows - len(nonzero), tuple(d for d in nonzero if d > 1)
    )


def format_matrix(matrix: IntMatrix) -> str:
    """Render in the CLI text format: 'rows cols' then one line per row."""
    lines = [f"{matrix.rows} {matrix.cols}"]
    lines.extend(" ".join(str(x) for x in row) for row in matrix.to_rows())
    return "\n".join(lines) + "\n"


def parse_matrix_text(text: str) -> IntMatrix:
    """Parse the CLI text format; errors carry line and column numbers."""
    tokenized = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        toks = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if toks:
            tokenized.append((line_no, toks))
    if not tokenized:
        raise ParseError("empty matrix input")

    def as_int(tok, line_no, col):
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", line_no, col) from None

    header_line, header = tokenized[0]
    if len(header) != 2:
        raise ParseError(
            "header must be 'rows cols'", header_line, header[0][1]
        )
    rows = as_int(header[0][0], header_line, header[0][1])
    cols = as_int(header[1][0], header_line, header[1][1])
    if rows < 0 or cols < 0:
        raise ParseError("dimensions must be >= 0", header_line, header[0][1])

    body = tokenized[1:]
    if len(body) != rows:
        where = body[rows][0] if len(body) > rows else header_line
        raise ParseError(f"expected {rows} data rows, got {len(body)}", where)
    entries = []
    for line_no, toks in body:
        if len(toks) != cols:
            raise ParseError(
                f"expected {cols} entries in this row, got {len(toks)}",
                line_no,
                toks[0][1] if toks else 1,
            )
        entries.extend(as_int(tok, line_no, col) for tok, col in toks)
    return IntMatrix(rows, cols, tuple(entries))
