"""
Run history database.
"""

import json
import sqlite3
from datetime import datetime
from typing import Any, Dict, List

from ..config.settings import Config
from ..utils.logging import get_logger


class RunDatabase:
   """Keeps a history of CLI runs and their outcomes."""

   def __init__(self, config: Config):
       """Initialize run database with configuration."""
       self.config = config
       self.logger = get_logger(__name__)
       self.config.data_dir.mkdir(parents=True, exist_ok=True)
       self.db_path = config.data_dir / "spherelab.db"
       self._init_database()

   def _init_database(self):
       """Initialize database tables if they don't exist."""
       with sqlite3.connect(self.db_path) as conn:
           cursor = conn.cursor()

           cursor.execute("""
               CREATE TABLE IF NOT EXISTS runs (
                   id INTEGER PRIMARY KEY AUTOINCREMENT,
                   timestamp TIMESTAMP,
                   command TEXT,
                   experiment TEXT,
                   seed INTEGER,
                   workers INTEGER,
                   runtime_s REAL,
                   status TEXT,
                   out_dir TEXT,
                   parameters TEXT
               )
           """)

           conn.commit()
           self.logger.debug(f"Database initialized at {self.db_path}")

   def log_run(self, run_data: Dict[str, Any]) -> int:
       """Record one run."""
       with sqlite3.connect(self.db_path) as conn:
           cursor = conn.cursor()

           cursor.execute("""
               INSERT INTO runs
               (timestamp, command, experiment, seed, workers, runtime_s, status, out_dir, parameters)
               VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?)
           """, (
               datetime.now().isoformat(timespec="seconds"),
               run_data.get('command'),
               run_data.get('experiment'),
               run_data.get('seed'),
               run_data.get('workers', 1),
               run_data.get('runtime_s', 0.0),
               run_data.get('status', 'unknown'),
               run_data.get('out_dir'),
               json.dumps(run_data.get('parameters', {}), sort_keys=True)
           ))

           run_id = cursor.lastrowid
           conn.commit()

           self.logger.debug(f"Logged run {run_id}")
           return run_id

   def get_recent_runs(self, limit: int = 20) -> List[Dict[str, Any]]:
       """Most recent runs first."""
       with sqlite3.connect(self.db_path) as conn:
           cursor = conn.cursor()

           cursor.execute("""
               SELECT * FROM runs
               ORDER BY id DESC
               LIMIT ?
           """, (limit,))

           columns = [desc[0] for desc in cursor.description]
           return [dict(zip(columns, row)) for row in cursor.fetchall()]

   def get_run_stats(self) -> Dict[str, Any]:
       """Counts of runs by status."""
       with sqlite3.connect(self.db_path) as conn:
           cursor = conn.cursor()

           cursor.execute("""
               SELECT
                   COUNT(*) as total_runs,
                   COUNT(CASE WHEN status = 'failed' THEN 1 END) as failed_runs,
                   AVG(runtime_s) as avg_runtime,
                   MAX(timestamp) as last_run
               FROM runs
           """)

           row = cursor.fetchone()

           return {
               'total_runs': row[0] or 0,
               'failed_runs': row[1] or 0,
               'avg_runtime_s': row[2] or 0.0,
               'last_run': row[3]
           }
