"""
Cache - 类多项式 SQLite 缓存
按 (D, s) 保存系数、所用精度、取整偏差与误差上界
"""

import json
import sqlite3
from pathlib import Path
from typing import Dict, Optional, Tuple

import mpmath as mp

from .polynomial import IntPolynomial, RoundingReport


class PolynomialCache:
    """类多项式缓存"""

    def __init__(self, db_path: str):
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self._init_db()

    def _init_db(self):
        """初始化数据库表"""
        with sqlite3.connect(self.db_path) as conn:
            conn.execute("""
                CREATE TABLE IF NOT EXISTS class_polynomials (
                    discriminant INTEGER NOT NULL,
                    s INTEGER NOT NULL,
                    coefficients TEXT NOT NULL,
                    prec_used INTEGER NOT NULL,
                    max_offset TEXT NOT NULL,
                    error_bound TEXT NOT NULL,
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
                    PRIMARY KEY (discriminant, s)
                )
            """)
            conn.commit()

    def get(self, D: int, s: int) -> Optional[Tuple[IntPolynomial, RoundingReport]]:
        """
        读取缓存

        Args:
            D: 判别式
            s: 24 的因子

        Returns:
            (IntPolynomial, RoundingReport) 或 None
        """
        with sqlite3.connect(self.db_path) as conn:
            row = conn.execute(
                "SELECT coefficients, prec_used, max_offset, error_bound FROM class_polynomials "
                "WHERE discriminant = ? AND s = ?", (D, s)
            ).fetchone()
        if row is None:
            return None
        coeffs, prec_used, max_offset, error_bound = row
        poly = IntPolynomial.from_json(json.loads(coeffs))
        return poly, RoundingReport(mp.mpf(max_offset), int(prec_used), [int(prec_used)],
                                    mp.mpf(error_bound))

    def put(self, D: int, s: int, poly: IntPolynomial, report: RoundingReport):
        """写入（覆盖）缓存"""
        with sqlite3.connect(self.db_path) as conn:
            conn.execute(
                "INSERT OR REPLACE INTO class_polynomials "
                "(discriminant, s, coefficients, prec_used, max_offset, error_bound) "
                "VALUES (?, ?, ?, ?, ?, ?)",
                (D, s, json.dumps(poly.to_json()), report.prec_used,
                 mp.nstr(report.max_offset, 17), mp.nstr(report.error_bound, 17))
            )
            conn.commit()

    def clear(self):
        with sqlite3.connect(self.db_path) as conn:
            conn.execute("DELETE FROM class_polynomials")
            conn.commit()

    def get_stats(self) -> Dict:
        """缓存统计"""
        with sqlite3.connect(self.db_path) as conn:
            count, max_prec, discs = conn.execute(
                "SELECT COUNT(*), MAX(prec_used), COUNT(DISTINCT discriminant) "
                "FROM class_polynomials"
            ).fetchone()
        return {
            "polynomial_count": count,
            "discriminant_count": discs,
            "max_prec_used": max_prec or 0,
        }
