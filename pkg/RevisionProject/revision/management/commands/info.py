from revision.cli import LabCommand


class Command(LabCommand):
    help = "Classes sémantiques, fermeture et disjonctivité d'une logique"
    command_name = "info"
