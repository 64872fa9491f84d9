from datetime import datetime
from typing import Dict, List
from pydantic import BaseModel, Field


class RunManifest(BaseModel):
    tool_version: str
    subcommand: str
    argv: List[str]
    input_digests: Dict[str, str] = Field(default_factory=dict)
    output_digests: Dict[str, str] = Field(default_factory=dict)
    wall_time: float = Field(..., ge=0)
    created_at: datetime
