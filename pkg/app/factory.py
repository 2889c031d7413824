"""
Factory for creating the main application.
"""

import logging
import os
from typing import Dict, List, Optional

from app.application import Application
from app.core.exceptions import ConfigurationError


class ApplicationFactory:
    """
    Factory for creating the main application.

    This class provides static methods for creating and inspecting
    the application.
    """

    @staticmethod
    def create_app(config_dir: Optional[str] = None, configure_logging: bool = True,
                   verify_components: bool = True) -> Application:
        """
        Create the main application.

        Args:
            config_dir: Directory containing configuration files (default: $CONFIG_DIR or ``config``)
            configure_logging: Whether to set up logging from main.yaml
            verify_components: Whether to check that registered classes import

        Returns:
            Application: The initialized application

        Raises:
            ConfigurationError: If initialization fails
        """
        logger = logging.getLogger("app.factory")
        if not config_dir:
            config_dir = os.environ.get("CONFIG_DIR", "config")
        logger.debug(f"Creating application with config directory: {config_dir}")

        init_options = {
            "configure_logging": configure_logging,
            "verify_components": verify_components,
        }
        try:
            return Application(config_dir=config_dir, init_options=init_options)
        except ConfigurationError:
            raise
        except Exception as e:
            logger.error(f"Failed to create application: {str(e)}")
            raise ConfigurationError(f"Failed to create application: {str(e)}") from e

    @staticmethod
    def get_available_components(app: Application) -> Dict[str, List[str]]:
        """
        Get all available components in the application.

        Args:
            app: Application instance

        Returns:
            Dict[str, List[str]]: Component ids per component type
        """
        registry = app.component_registry
        return {component_type: registry.list_components(component_type)
                for component_type in registry.list_component_types()}
