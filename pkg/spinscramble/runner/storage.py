"""
结果存储模块
"""
import json
import os
from typing import Dict, List

import pandas as pd


FLOAT_FORMAT = "%.17g"


class ResultStorage:
    def __init__(self, base_dir: str = "results"):
        self.base_dir = base_dir
        self.written: List[str] = []
        self._ensure_dir(base_dir)
    
    def _ensure_dir(self, path: str):
        if path and not os.path.exists(path):
            os.makedirs(path)
    
    def _get_path(self, *args) -> str:
        path = os.path.join(self.base_dir, *args)
        self._ensure_dir(os.path.dirname(path))
        return path
    
    def _record(self, filename: str):
        if filename not in self.written:
            self.written.append(filename)
    
    def save_dataframe(self, df: pd.DataFrame, filename: str) -> str:
        filename = filename if filename.endswith('.csv') else f"{filename}.csv"
        path = self._get_path(filename)
        df.to_csv(path, index=False, float_format=FLOAT_FORMAT, encoding='utf-8',
                  lineterminator='\n')
        self._record(filename)
        return path
    
    def load_dataframe(self, filename: str) -> pd.DataFrame:
        filename = filename if filename.endswith('.csv') else f"{filename}.csv"
        path = self._get_path(filename)
        if os.path.exists(path):
            return pd.read_csv(path, encoding='utf-8', float_precision='round_trip')
        return pd.DataFrame()
    
    def save_json(self, data: Dict, filename: str) -> str:
        filename = filename if filename.endswith('.json') else f"{filename}.json"
        path = self._get_path(filename)
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            json.dump(data, f, indent=4, ensure_ascii=False, default=_json_default)
            f.write('\n')
        self._record(filename)
        return path
    
    def load_json(self, filename: str) -> Dict:
        filename = filename if filename.endswith('.json') else f"{filename}.json"
        path = self._get_path(filename)
        if os.path.exists(path):
            with open(path, 'r', encoding='utf-8') as f:
                return json.load(f)
        return {}
    
    def list_files(self, pattern: str = None) -> List[str]:
        if not os.path.exists(self.base_dir):
            return []
        files = sorted(os.listdir(self.base_dir))
        if pattern:
            files = [f for f in files if pattern in f]
        return files
    
    def file_exists(self, filename: str) -> bool:
        return os.path.exists(os.path.join(self.base_dir, filename))


def _json_default(value):
    # numpy 标量与数组
    if hasattr(value, 'tolist'):
        return value.tolist()
    if hasattr(value, 'value'):
        return value.value
    raise TypeError(f"无法序列化类型 {type(value).__name__}")
