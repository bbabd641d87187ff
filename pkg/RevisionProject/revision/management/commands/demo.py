from revision.cli import LabCommand


class Command(LabCommand):
    help = "Démonstration reproductible sur la logique d'exemple"
    command_name = "demo"
