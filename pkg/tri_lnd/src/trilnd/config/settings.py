"""
trilnd Settings Configuration
=============================

Configurazione centrale: limiti delle semidecisioni, formato dei rapporti,
logging e parametri della suite di chiusura.
"""

import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional, Union

import yaml

from trilnd.core.derivation import SemiDecisionBounds
from trilnd.exceptions import ConfigurationError

OUTPUT_FORMATS = ("text", "json")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@dataclass
class TrilndSettings:
    """
    Configurazione principale di trilnd.

    Parametri per controllare:
    - Limiti della semidecisione di locale nilpotenza
    - Formato e verifica dei rapporti
    - Destinazione dei log
    - Dimensione e seme della suite di chiusura
    """

    # === SEMIDECISIONI ===
    nilpotency_bound: int = 200             # Iterazioni massime per variabile
    degree_cap: int = 60                    # Soglia di grado (interruzione a 4x)

    # === RAPPORTI ===
    output_format: str = "text"             # text | json
    verify: bool = True                     # Ripassata di verifica prima dell'emissione

    # === LOGGING ===
    log_level: str = "WARNING"
    log_to_file: bool = False
    log_file_path: str = "logs/trilnd.log"

    # === SUITE DI CHIUSURA ===
    closure_instances: int = 100
    closure_seed: int = 20260101

    def __post_init__(self):
        self._validate_parameters()

    def _validate_parameters(self):
        """Valida i parametri di configurazione"""
        if self.nilpotency_bound < 1:
            raise ConfigurationError("nilpotency_bound deve essere >= 1", {"valore": self.nilpotency_bound})
        if self.degree_cap < 1:
            raise ConfigurationError("degree_cap deve essere >= 1", {"valore": self.degree_cap})
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigurationError(f"output_format deve essere uno tra {OUTPUT_FORMATS}", {"valore": self.output_format})
        if self.log_level.upper() not in LOG_LEVELS:
            raise ConfigurationError(f"log_level sconosciuto: {self.log_level}")
        if self.closure_instances < 1:
            raise ConfigurationError("closure_instances deve essere >= 1")

    @classmethod
    def from_file(cls, config_path: Union[str, Path]) -> "TrilndSettings":
        """
        Carica configurazione da file YAML

        Args:
            config_path: Percorso file configurazione

        Returns:
            TrilndSettings: Istanza configurazione
        """
        config_path = Path(config_path)

        if not config_path.exists():
            raise ConfigurationError(f"File configurazione non trovato: {config_path}")

        with open(config_path, "r", encoding="utf-8") as f:
            try:
                config_data = yaml.safe_load(f) or {}
            except yaml.YAMLError as exc:
                raise ConfigurationError(f"YAML non valido in {config_path}: {exc}") from exc

        if not isinstance(config_data, dict):
            raise ConfigurationError(f"{config_path} deve contenere una mappa di chiavi")
        known = {item.name for item in fields(cls)}
        unknown = sorted(set(config_data) - known)
        if unknown:
            raise ConfigurationError(f"Chiavi sconosciute in {config_path}: {unknown}")
        return cls(**config_data)

    def save_to_file(self, config_path: Union[str, Path]):
        """
        Salva configurazione su file YAML

        Args:
            config_path: Percorso file di destinazione
        """
        config_path = Path(config_path)
        config_path.parent.mkdir(parents=True, exist_ok=True)

        config_dict = {item.name: getattr(self, item.name) for item in fields(self)}

        with open(config_path, "w", encoding="utf-8") as f:
            yaml.dump(config_dict, f, default_flow_style=False, allow_unicode=True, sort_keys=False)

    def bounds(self) -> SemiDecisionBounds:
        """Limiti da passare alla pipeline"""
        return SemiDecisionBounds(self.nilpotency_bound, self.degree_cap)


# Istanza globale settings
_settings_instance: Optional[TrilndSettings] = None


def get_settings() -> TrilndSettings:
    """
    Ottiene istanza globale delle impostazioni

    Returns:
        TrilndSettings: Configurazione globale
    """
    global _settings_instance

    if _settings_instance is None:
        # Cerca file configurazione in ordine di priorità
        config_paths = [
            "trilnd.yaml",
            "config/trilnd.yaml",
            os.getenv("TRILND_CONFIG", ""),
        ]

        for config_path in config_paths:
            if config_path and Path(config_path).exists():
                _settings_instance = TrilndSettings.from_file(config_path)
                break
        else:
            _settings_instance = TrilndSettings()

    return _settings_instance


def set_settings(settings: Optional[TrilndSettings]):
    """
    Imposta istanza globale delle impostazioni (None la azzera)

    Args:
        settings: Nuova configurazione
    """
    global _settings_instance
    _settings_instance = settings
